#pragma once

#include <vector>

#include "epsrec/geometry.hpp"

namespace epsrec {

/// Nodal scalar field on a UniformGrid. Storage: axis 0 fastest, depth axis
/// slowest; 2-D fields keep counts[2] == 1.
struct NodeField {
  std::array<int, 3> n{1, 1, 1};
  std::vector<double> v;

  NodeField() = default;
  explicit NodeField(const UniformGrid& g, double fill = 0.0)
      : n(g.counts), v(static_cast<size_t>(g.total_nodes()), fill) {}

  long index(int i0, int i1, int i2 = 0) const {
    return (static_cast<long>(i2) * n[1] + i1) * n[0] + i0;
  }
  double& at(int i0, int i1, int i2 = 0) { return v[index(i0, i1, i2)]; }
  double at(int i0, int i1, int i2 = 0) const { return v[index(i0, i1, i2)]; }
  long size() const { return static_cast<long>(v.size()); }

  void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

double max_abs(const NodeField& f);
double l2_norm(const NodeField& f);

}  // namespace epsrec
