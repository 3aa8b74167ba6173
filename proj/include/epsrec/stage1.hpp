#pragma once

#include <optional>
#include <vector>

#include "epsrec/carleman.hpp"
#include "epsrec/coeff_mesh.hpp"
#include "epsrec/laplace.hpp"
#include "epsrec/trace.hpp"
#include "epsrec/wave.hpp"

namespace epsrec {

/// Evaluation frequency for the explicit coefficient formula
/// eps = lap v + s^2 |grad v|^2.
enum class CoeffEvalFreq { LayerNode, SBar };

struct GcaConfig {
  PseudoFreqAxis freq;
  double lambda = 20.0;   // Carleman parameter
  int inner_iters = 2;    // m_n, constant across layers
  double inner_tol = 1e-3;
  double outer_tol = 1e-3;
  double clamp_max = 25.0;  // b of the admissible set [1, b]
  CoeffEvalFreq eval_freq = CoeffEvalFreq::LayerNode;
  double lin_tol = 1e-9;
  int lin_max_iters = 6000;
  int psi_refine = 4;  // s-ladder refinement for the psi derivative

  // Initial-approximation fit (arrival-seeded box primitives matched to the
  // extracted scattered waveform; the first tail is the transform of its
  // forward run). Set `bootstrap = false` to fall back to the homogeneous
  // tail; that start reconstructs nothing from backscattered data.
  bool bootstrap = true;
  double detect_floor = 1e-6;   // scattered peak vs reference peak
  double gate_frac = 0.5;       // component gate on the lateral peak profile
  double arrival_frac = 0.2;    // arrival = first crossing of frac * max|u|
  int fit_nm_evals = 160;       // simplex budget per component set
  double fit_beta_max = 4.0;    // contrast bound (eps <= (1 + beta)^2)
};

/// Geometry binding the inversion G grid to the coefficient region Omega.
/// Omega node window [olo, ohi] must align with G grid nodes.
struct Stage1Setup {
  UniformGrid g_grid;
  TimeAxis time;
  SourceSpec src;
  RectDomain omega;
  std::array<int, 3> olo{0, 0, 0};
  std::array<int, 3> ohi{0, 0, 0};
  int gamma_plane = 0;  // depth index of the measurement plane (top of Omega)

  UniformGrid omega_grid() const;
  static Stage1Setup make(const UniformGrid& g_grid, const TimeAxis& time,
                          const SourceSpec& src, const RectDomain& omega);
};

struct Stage1HistoryRow {
  int layer = 0;
  int inner = 0;
  double eps_l2 = 0;
  double eps_max = 0;
  double inner_residual = 0;  // relative change of eps within the layer
};

struct FittedComponent {
  double center_lateral0 = 0;  // fitted box center, first lateral axis
  double center_lateral1 = 0;  // second lateral axis (3-D only)
  double half_width0 = 0;
  double half_width1 = 0;
  double top_depth_coord = 0;  // depth coordinate of the fitted box top
  double thickness = 0;
  double contrast = 0;         // beta; box value is (1 + beta)^2
  double misfit = 0;           // final waveform misfit of the component set
};

struct Stage1Result {
  QuadtreeCoeffMesh eps_glob;
  std::vector<Stage1HistoryRow> history;
  std::vector<FittedComponent> components;
  int outer_layers_run = 0;
};

/// The full first-stage reconstruction from boundary data on Gamma.
/// `gamma_traces` columns must lie on the Gamma plane of `setup.g_grid`
/// (already preprocessed: propagated / extracted / calibrated / re-immersed
/// into the background reference).
Stage1Result run_stage1(const TimeTraces& gamma_traces,
                        const Stage1Setup& setup,
                        const QuadtreeCoeffMesh& coeff_template,
                        const GcaConfig& cfg);

// --- pieces, exposed for unit tests ---

/// v_n = -h q_n - qbar_{n-1} + V_n, pointwise.
NodeField recover_v(const NodeField& q_n, const NodeField& qbar,
                    const NodeField& tail, double h);

/// eps = lap v + s^2 |grad v|^2 at interior nodes; boundary nodes copy the
/// nearest interior value. Returned field is nodal on the Omega window grid.
NodeField recover_epsilon_nodal(const NodeField& v, const UniformGrid& grid,
                                double s_eval);

/// Pointwise clamp to the admissible interval [1, b].
void clamp_epsilon(QuadtreeCoeffMesh& eps, double b);

/// Forward run with `eps` extended by 1 outside Omega, transform at s_max,
/// tail = ln w / s_max^2 on the Omega window. Throws PositivityViolation
/// with the node location if the transform is nonpositive anywhere.
NodeField update_tail(const QuadtreeCoeffMesh& eps, const Stage1Setup& setup,
                      const PseudoFreqAxis& freq);

/// Layer Dirichlet data: boundary psi_n assembled from the measured side
/// (Gamma) and the homogeneous w0 model on the complement of Gamma.
struct LayerBoundaryData {
  std::vector<NodeField> psi_n;  // one Omega-window field per layer (boundary
                                 // nodes meaningful, interior zero)
};

LayerBoundaryData assemble_psi(const TimeTraces& gamma_traces,
                               const Stage1Setup& setup, const GcaConfig& cfg);

/// Solves the linearized layer problem (the |grad q|^2 term is dropped):
/// lap q + a1 (grad V - grad qbar) . grad q = a3 |grad V - grad qbar|^2.
NodeField solve_layer(const NodeField& qbar, const NodeField& tail,
                      const NodeField& psi_n, const CarlemanCoeffs& coeffs,
                      const UniformGrid& grid, double lin_tol, int lin_iters);

}  // namespace epsrec
