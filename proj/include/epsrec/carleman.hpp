#pragma once

#include "epsrec/laplace.hpp"

namespace epsrec {

/// Coefficients of the layer equation obtained by integrating the
/// pseudo-frequency equation for q against the exponential weight
/// e^{Lambda (s - s_{n-1})} over [s_n, s_{n-1}]:
///
///   lap q_n + a1 grad q_n . (grad V - grad qbar)
///     = a2 |grad q_n|^2 + a3 |grad V - grad qbar|^2
///
/// with a1 = 2 (J2 - 2 K1) / I0, a2 = 2 (2 K2 - b K1) / I0,
/// a3 = -2 J1 / I0, where b = s_{n-1} and
///   I0 = int W ds, Jk = int s^k W ds, Kk = int s^k (b - s) W ds.
/// |a2| decays like 1/Lambda; the a2 term is dropped in the linear solve.
struct CarlemanCoeffs {
  int layer = 1;
  double lambda = 0;
  double a1 = 0, a2 = 0, a3 = 0;
  // moment integrals, exposed for the quadrature cross-checks
  double i0 = 0, j1 = 0, j2 = 0, k1 = 0, k2 = 0;
};

CarlemanCoeffs carleman_coefficients(int layer, const PseudoFreqAxis& axis,
                                     double lambda);

namespace detail {
/// P_m = int_{-h}^{0} u^m e^{Lambda u} du, evaluated stably for any
/// Lambda h >= 0 (series below Lambda h = 1, recurrence above).
double weighted_power_moment(int m, double lambda, double h);
}  // namespace detail

}  // namespace epsrec
