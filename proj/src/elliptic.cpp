#include "epsrec/elliptic.hpp"

#include <cmath>

namespace epsrec {

namespace {

struct Stencil {
  const UniformGrid& grid;
  const std::array<NodeField, 3>& b;
  std::array<double, 3> inv_h{0, 0, 0};
  std::array<double, 3> inv_h2{0, 0, 0};

  Stencil(const UniformGrid& g, const std::array<NodeField, 3>& b_)
      : grid(g), b(b_) {
    for (int a = 0; a < g.dim(); ++a) {
      inv_h[a] = 1.0 / g.spacing[a];
      inv_h2[a] = inv_h[a] * inv_h[a];
    }
  }

  bool boundary(int i0, int i1, int i2) const {
    if (i0 == 0 || i0 == grid.counts[0] - 1) return true;
    if (i1 == 0 || i1 == grid.counts[1] - 1) return true;
    if (grid.dim() == 3 && (i2 == 0 || i2 == grid.counts[2] - 1)) return true;
    return false;
  }

  /// y = A x on interior nodes; x is a full field whose boundary entries are
  /// part of the data (vary: pass through `x` as-is).
  void apply(const NodeField& x, NodeField& y) const {
    const int n0 = grid.counts[0], n1 = grid.counts[1], n2 = grid.counts[2];
    const long s1 = n0, s2 = static_cast<long>(n0) * n1;
    const int dim = grid.dim();
    for (int i2 = 0; i2 < n2; ++i2)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i0 = 0; i0 < n0; ++i0) {
          long id = i2 * s2 + i1 * s1 + i0;
          if (boundary(i0, i1, i2)) {
            y.v[id] = 0;
            continue;
          }
          double acc = 0;
          // axis 0
          acc += (x.v[id + 1] + x.v[id - 1] - 2 * x.v[id]) * inv_h2[0] +
                 b[0].v[id] * (x.v[id + 1] - x.v[id - 1]) * 0.5 * inv_h[0];
          acc += (x.v[id + s1] + x.v[id - s1] - 2 * x.v[id]) * inv_h2[1] +
                 b[1].v[id] * (x.v[id + s1] - x.v[id - s1]) * 0.5 * inv_h[1];
          if (dim == 3)
            acc += (x.v[id + s2] + x.v[id - s2] - 2 * x.v[id]) * inv_h2[2] +
                   b[2].v[id] * (x.v[id + s2] - x.v[id - s2]) * 0.5 * inv_h[2];
          y.v[id] = acc;
        }
  }
};

double dot(const NodeField& a, const NodeField& b) {
  double s = 0;
  for (long i = 0; i < a.size(); ++i) s += a.v[i] * b.v[i];
  return s;
}

}  // namespace

EllipticResult solve_convection_diffusion(const UniformGrid& grid,
                                          const std::array<NodeField, 3>& b,
                                          const NodeField& rhs,
                                          const NodeField& dirichlet,
                                          double rel_tol, int max_iters) {
  Stencil A(grid, b);
  // initial iterate: Dirichlet data on the boundary, zero inside; the
  // boundary never changes, so BiCGStab runs on the homogeneous correction.
  NodeField q = dirichlet;
  const int n0 = grid.counts[0], n1 = grid.counts[1], n2 = grid.counts[2];
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i0 = 0; i0 < n0; ++i0)
        if (!A.boundary(i0, i1, i2)) q.at(i0, i1, i2) = 0.0;

  NodeField r(grid, 0.0), tmp(grid, 0.0);
  A.apply(q, tmp);
  double rhs_norm = 0;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i0 = 0; i0 < n0; ++i0) {
        if (A.boundary(i0, i1, i2)) continue;
        long id = q.index(i0, i1, i2);
        r.v[id] = rhs.v[id] - tmp.v[id];
        rhs_norm += rhs.v[id] * rhs.v[id];
      }
  rhs_norm = std::sqrt(rhs_norm);
  double scale = (rhs_norm > 0) ? rhs_norm : std::sqrt(dot(r, r));
  if (scale == 0) return {q, 0, 0.0};

  NodeField r0 = r, p = r, v(grid, 0.0), s(grid, 0.0), t(grid, 0.0);
  double rho = dot(r0, r);
  double res = std::sqrt(dot(r, r)) / scale;
  int it = 0;
  while (res > rel_tol && it < max_iters) {
    A.apply(p, v);
    double alpha = rho / dot(r0, v);
    for (long i = 0; i < s.size(); ++i) s.v[i] = r.v[i] - alpha * v.v[i];
    A.apply(s, t);
    double tt = dot(t, t);
    double omega = tt > 0 ? dot(t, s) / tt : 0.0;
    for (long i = 0; i < q.size(); ++i)
      q.v[i] += alpha * p.v[i] + omega * s.v[i];
    for (long i = 0; i < r.size(); ++i) r.v[i] = s.v[i] - omega * t.v[i];
    double rho_new = dot(r0, r);
    double beta = (rho_new / rho) * (alpha / (omega != 0 ? omega : 1.0));
    rho = rho_new;
    for (long i = 0; i < p.size(); ++i)
      p.v[i] = r.v[i] + beta * (p.v[i] - omega * v.v[i]);
    res = std::sqrt(dot(r, r)) / scale;
    ++it;
    if (rho == 0 || omega == 0) break;  // breakdown; residual reported below
  }
  if (res > rel_tol)
    throw Error(ErrorKind::SolverFailure,
                "BiCGStab stalled after " + std::to_string(it) +
                    " iterations, relative residual " + std::to_string(res));
  return {q, it, res};
}

}  // namespace epsrec
