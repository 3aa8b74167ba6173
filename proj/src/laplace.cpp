#include "epsrec/laplace.hpp"

#include <cmath>

namespace epsrec {

PseudoFreqAxis::PseudoFreqAxis(double s_min_, double s_max_, int layers_)
    : s_min(s_min_), s_max(s_max_), layers(layers_) {
  if (!(s_min > 0) || !(s_max > s_min) || layers < 1)
    throw Error(ErrorKind::InvalidConfig,
                "pseudo-frequency window needs 0 < s_min < s_max, layers >= 1");
}

double laplace_transform(std::span<const double> trace, const TimeAxis& axis,
                         double s) {
  if (static_cast<int>(trace.size()) != axis.steps + 1)
    throw Error(ErrorKind::DimensionMismatch,
                "trace length does not match time axis");
  double acc = 0;
  for (int k = 0; k <= axis.steps; ++k) {
    double w = (k == 0 || k == axis.steps) ? 0.5 * axis.tau : axis.tau;
    acc += w * trace[k] * std::exp(-s * axis.time(k));
  }
  return acc;
}

std::vector<double> laplace_transform_all(const TraceMatrix& traces,
                                          const TimeAxis& axis, double s) {
  if (traces.n_times != axis.steps + 1)
    throw Error(ErrorKind::DimensionMismatch,
                "trace rows do not match time axis");
  std::vector<double> out(traces.n_cols, 0.0);
  for (int k = 0; k <= axis.steps; ++k) {
    double w = (k == 0 || k == axis.steps) ? 0.5 * axis.tau : axis.tau;
    double e = w * std::exp(-s * axis.time(k));
    for (int j = 0; j < traces.n_cols; ++j) out[j] += e * traces.at(k, j);
  }
  return out;
}

std::vector<double> compute_w(std::span<const double> u_tilde, double ft) {
  std::vector<double> w(u_tilde.size());
  for (size_t i = 0; i < u_tilde.size(); ++i) w[i] = u_tilde[i] / ft;
  return w;
}

namespace {
void check_positive(double w, size_t idx, double s, const std::string& where) {
  if (!(w > 0))
    throw Error(ErrorKind::PositivityViolation,
                "w = " + std::to_string(w) + " at s = " + std::to_string(s),
                where + ", node " + std::to_string(idx));
}
}  // namespace

std::vector<double> compute_v(std::span<const double> w, double s,
                              const std::string& where) {
  std::vector<double> v(w.size());
  for (size_t i = 0; i < w.size(); ++i) {
    check_positive(w[i], i, s, where);
    v[i] = std::log(w[i]) / (s * s);
  }
  return v;
}

std::vector<double> compute_tail(std::span<const double> w_at_smax,
                                 double s_max, const std::string& where) {
  return compute_v(w_at_smax, s_max, where);
}

std::vector<double> compute_q(const std::vector<std::vector<double>>& v_rows,
                              const std::vector<double>& s_samples, int row) {
  int ns = static_cast<int>(s_samples.size());
  if (static_cast<int>(v_rows.size()) != ns)
    throw Error(ErrorKind::DimensionMismatch, "v rows != s samples");
  size_t n = v_rows[row].size();
  std::vector<double> q(n);
  int lo = (row > 0) ? row - 1 : row;
  int hi = (row < ns - 1) ? row + 1 : row;
  double ds = s_samples[lo] - s_samples[hi];
  for (size_t j = 0; j < n; ++j)
    q[j] = (v_rows[lo][j] - v_rows[hi][j]) / ds;
  return q;
}

std::vector<double> refined_s_ladder(const PseudoFreqAxis& axis, int refine) {
  double hr = axis.h() / refine;
  int count = axis.layers * refine + 3;  // one extra sample beyond both ends
  std::vector<double> s(count);
  for (int i = 0; i < count; ++i) s[i] = axis.s_max + hr - i * hr;
  return s;
}

BoundaryPsi compute_psi(const std::vector<std::vector<double>>& phi_rows,
                        const std::vector<double>& s_samples,
                        const PseudoFreqAxis& axis, const std::string& where) {
  int ns = static_cast<int>(s_samples.size());
  if (static_cast<int>(phi_rows.size()) != ns)
    throw Error(ErrorKind::DimensionMismatch, "phi rows != s samples");
  int n_nodes = static_cast<int>(phi_rows[0].size());

  // v = ln(phi)/s^2 per sample row
  std::vector<std::vector<double>> v(ns);
  for (int i = 0; i < ns; ++i) {
    if (static_cast<int>(phi_rows[i].size()) != n_nodes)
      throw Error(ErrorKind::DimensionMismatch, "ragged phi matrix");
    v[i] = compute_v(phi_rows[i], s_samples[i], where);
  }
  // psi = dv/ds, central differences
  std::vector<std::vector<double>> psi(ns);
  for (int i = 0; i < ns; ++i) psi[i] = compute_q(v, s_samples, i);

  // locate a node value s on the ladder
  double hr = s_samples[0] - s_samples[1];
  auto at_s = [&](double s) -> const std::vector<double>& {
    int k = static_cast<int>(std::lround((s_samples[0] - s) / hr));
    if (k < 0 || k >= ns)
      throw Error(ErrorKind::InvalidConfig, "s outside refined ladder");
    return psi[k];
  };

  BoundaryPsi out;
  out.n_nodes = n_nodes;
  out.layer_avg.resize(axis.layers);
  for (int n = 1; n <= axis.layers; ++n) {
    const auto& a = at_s(axis.s_node(n));
    const auto& b = at_s(axis.s_node(n - 1));
    out.layer_avg[n - 1].resize(n_nodes);
    for (int j = 0; j < n_nodes; ++j)
      out.layer_avg[n - 1][j] = 0.5 * (a[j] + b[j]);
  }
  out.psi_at_smax = at_s(axis.s_max);
  return out;
}

}  // namespace epsrec
