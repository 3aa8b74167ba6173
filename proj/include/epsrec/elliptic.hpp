#pragma once

#include <array>

#include "epsrec/field.hpp"

namespace epsrec {

struct EllipticResult {
  NodeField q;
  int iterations = 0;
  double residual = 0;  // relative to the rhs norm
};

/// Solves  lap q + b . grad q = rhs  on the interior of `grid` with Dirichlet
/// values from `dirichlet` on the boundary nodes, by central differences and
/// matrix-free BiCGStab. The operator is linear; there is no |grad q|^2 term.
EllipticResult solve_convection_diffusion(const UniformGrid& grid,
                                          const std::array<NodeField, 3>& b,
                                          const NodeField& rhs,
                                          const NodeField& dirichlet,
                                          double rel_tol, int max_iters);

}  // namespace epsrec
