#include "epsrec/carleman.hpp"

#include <cmath>

namespace epsrec {

namespace detail {

double weighted_power_moment(int m, double lambda, double h) {
  double x = lambda * h;
  if (x < 1.0) {
    // P_m = (-1)^m h^{m+1} sum_j (-x)^j / (j! (m + j + 1))
    double sum = 0, term = 1.0;
    for (int j = 0; j < 60; ++j) {
      if (j > 0) term *= -x / j;
      sum += term / (m + j + 1);
      if (std::abs(term) < 1e-18 * std::abs(sum) && j > 2) break;
    }
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(h, m + 1) * sum;
  }
  double E = std::exp(-x);
  double p = (1.0 - E) / lambda;  // P_0
  for (int k = 1; k <= m; ++k) {
    double hk = std::pow(-h, k);
    p = -hk * E / lambda - (k / lambda) * p;
  }
  return p;
}

}  // namespace detail

CarlemanCoeffs carleman_coefficients(int layer, const PseudoFreqAxis& axis,
                                     double lambda) {
  if (layer < 1 || layer > axis.layers)
    throw Error(ErrorKind::InvalidConfig,
                "layer index out of range: " + std::to_string(layer));
  if (!(lambda > 0))
    throw Error(ErrorKind::InvalidConfig, "Carleman parameter must be > 0");
  double h = axis.h();
  double b = axis.s_node(layer - 1);  // s_{n-1}, upper end of the interval
  double p0 = detail::weighted_power_moment(0, lambda, h);
  double p1 = detail::weighted_power_moment(1, lambda, h);
  double p2 = detail::weighted_power_moment(2, lambda, h);
  double p3 = detail::weighted_power_moment(3, lambda, h);

  CarlemanCoeffs c;
  c.layer = layer;
  c.lambda = lambda;
  c.i0 = p0;
  c.j1 = p1 + b * p0;
  c.j2 = p2 + 2 * b * p1 + b * b * p0;
  c.k1 = -(p2 + b * p1);
  c.k2 = -(p3 + 2 * b * p2 + b * b * p1);
  c.a1 = 2.0 * (c.j2 - 2.0 * c.k1) / c.i0;
  c.a2 = 2.0 * (2.0 * c.k2 - b * c.k1) / c.i0;
  c.a3 = -2.0 * c.j1 / c.i0;
  return c;
}

}  // namespace epsrec
