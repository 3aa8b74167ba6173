#include "epsrec/field.hpp"

#include <cmath>

namespace epsrec {

double max_abs(const NodeField& f) {
  double m = 0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double l2_norm(const NodeField& f) {
  double s = 0;
  for (double x : f.v) s += x * x;
  return std::sqrt(s);
}

}  // namespace epsrec
