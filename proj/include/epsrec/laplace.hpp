#pragma once

#include <span>
#include <vector>

#include "epsrec/geometry.hpp"
#include "epsrec/source.hpp"
#include "epsrec/trace.hpp"

namespace epsrec {

/// Descending sample ladder over the pseudo-frequency window [s_min, s_max]:
/// s_0 = s_max > s_1 > ... > s_N = s_min, step h = (s_max - s_min) / N.
struct PseudoFreqAxis {
  double s_min = 6.0;
  double s_max = 8.0;
  int layers = 10;

  PseudoFreqAxis() = default;
  PseudoFreqAxis(double s_min_, double s_max_, int layers_);

  double h() const { return (s_max - s_min) / layers; }
  double s_node(int n) const { return s_max - h() * n; }
};

/// Trapezoidal transform of a finite-duration trace, integral over [0, T];
/// the tail beyond T is treated as zero.
double laplace_transform(std::span<const double> trace, const TimeAxis& axis,
                         double s);

/// Columnwise transform of a trace matrix.
std::vector<double> laplace_transform_all(const TraceMatrix& traces,
                                          const TimeAxis& axis, double s);

/// w = u~ / f~(s); positivity is checked at consumption, not here.
std::vector<double> compute_w(std::span<const double> u_tilde, double ft);

/// v = ln(w) / s^2, pointwise. `where` labels the field in positivity errors.
std::vector<double> compute_v(std::span<const double> w, double s,
                              const std::string& where);

/// Tail V = ln w(., s_max) / s_max^2.
std::vector<double> compute_tail(std::span<const double> w_at_smax,
                                 double s_max, const std::string& where);

/// q = dv/ds by second-order differences over descending s-samples
/// (central inside, one-sided at the ends). v is (n_s x n_nodes) row-major.
std::vector<double> compute_q(const std::vector<std::vector<double>>& v_rows,
                              const std::vector<double>& s_samples, int row);

/// psi machinery for boundary data.
///
/// phi rows are samples of phi(x, s) > 0 on the refined descending ladder
/// `s_samples` (spacing h/4, extended one sample beyond both window ends);
/// psi = d/ds [ln(phi)/s^2] by central differences on that ladder, and
/// psi_n = (psi(s_n) + psi(s_{n-1})) / 2.
struct BoundaryPsi {
  int n_nodes = 0;
  // layer_avg[n-1][j] = psi_n at boundary column j, n = 1..N
  std::vector<std::vector<double>> layer_avg;
  // psi_at_smax[j]: psi(x_j, s_max), used by tail bootstrap diagnostics
  std::vector<double> psi_at_smax;
};

std::vector<double> refined_s_ladder(const PseudoFreqAxis& axis,
                                     int refine = 4);

BoundaryPsi compute_psi(const std::vector<std::vector<double>>& phi_rows,
                        const std::vector<double>& s_samples,
                        const PseudoFreqAxis& axis,
                        const std::string& where);

}  // namespace epsrec
