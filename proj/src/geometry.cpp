#include "epsrec/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace epsrec {

RectDomain::RectDomain(Coord lo_, Coord hi_, int dim_)
    : lo(lo_), hi(hi_), dim(dim_) {
  if (dim != 2 && dim != 3)
    throw Error(ErrorKind::InvalidGeometry, "dim must be 2 or 3");
  for (int a = 0; a < dim; ++a) {
    if (!(lo[a] < hi[a]))
      throw Error(ErrorKind::InvalidGeometry,
                  "degenerate box: lo >= hi on axis " + std::to_string(a),
                  describe());
  }
}

double RectDomain::min_extent() const {
  double m = extent(0);
  for (int a = 1; a < dim; ++a) m = std::min(m, extent(a));
  return m;
}

bool RectDomain::contains(const Coord& p) const {
  for (int a = 0; a < dim; ++a)
    if (p[a] < lo[a] || p[a] >= hi[a]) return false;
  return true;
}

bool RectDomain::contains_closed(const Coord& p, double tol) const {
  for (int a = 0; a < dim; ++a)
    if (p[a] < lo[a] - tol || p[a] > hi[a] + tol) return false;
  return true;
}

std::string RectDomain::describe() const {
  std::ostringstream os;
  os << "[";
  for (int a = 0; a < dim; ++a)
    os << (a ? "x" : "") << "(" << lo[a] << "," << hi[a] << ")";
  os << "]";
  return os.str();
}

double UniformGrid::min_spacing() const {
  double m = spacing[0];
  for (int a = 1; a < dim(); ++a) m = std::min(m, spacing[a]);
  return m;
}

int UniformGrid::nearest_index(int axis, double x) const {
  int i = static_cast<int>(std::lround((x - domain.lo[axis]) / spacing[axis]));
  return std::clamp(i, 0, counts[axis] - 1);
}

UniformGrid build_grid(const RectDomain& domain, double target_spacing) {
  if (!(target_spacing > 0))
    throw Error(ErrorKind::InvalidGeometry, "target spacing must be positive");
  if (target_spacing > domain.min_extent() / 2)
    throw Error(ErrorKind::InvalidGeometry,
                "target spacing exceeds half the smallest extent",
                domain.describe());
  UniformGrid g;
  g.domain = domain;
  for (int a = 0; a < domain.dim; ++a) {
    double ext = domain.extent(a);
    // snap: intervals = ceil(ext / target), robust against ext/target being
    // an integer up to roundoff
    int intervals =
        static_cast<int>(std::ceil(ext / target_spacing - 1e-9));
    intervals = std::max(intervals, 2);
    g.spacing[a] = ext / intervals;
    g.counts[a] = intervals + 1;
  }
  return g;
}

TimeAxis TimeAxis::with_steps(double T, int steps) {
  if (!(T > 0) || steps < 1)
    throw Error(ErrorKind::InvalidConfig, "time axis needs T > 0, steps >= 1");
  TimeAxis ax;
  ax.T = T;
  ax.steps = steps;
  ax.tau = T / steps;
  return ax;
}

TimeAxis TimeAxis::from_cfl(double T, double h_min, int dim, double safety) {
  double tau_max = safety * h_min / std::sqrt(static_cast<double>(dim));
  int steps = static_cast<int>(std::ceil(T / tau_max - 1e-12));
  return with_steps(T, std::max(steps, 1));
}

std::vector<Face> all_faces(int dim) {
  std::vector<Face> f;
  for (int a = 0; a < dim; ++a)
    for (int s = 0; s < 2; ++s) f.push_back({a, s});
  return f;
}

const char* boundary_tag_name(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::Front: return "front";
    case BoundaryTag::Back: return "back";
    case BoundaryTag::Lateral: return "lateral";
    case BoundaryTag::Gamma: return "gamma";
    case BoundaryTag::GammaPrime: return "gamma-prime";
  }
  return "unknown";
}

}  // namespace epsrec
