#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epsrec/field.hpp"
#include "epsrec/source.hpp"
#include "epsrec/trace.hpp"

namespace epsrec {

enum class FaceBC {
  MurAbsorbing,  // first-order absorbing, du/dn = -du/dt (depth faces only)
  NeumannMirror, // du/dn = 0
  NeumannData,   // du/dn = p(x, t), data supplied per face
};

inline int face_id(Face f) { return f.axis * 2 + f.side; }

/// Number of nodes on a face plane (all transverse axes, edges included).
int face_cols(const UniformGrid& grid, Face f);
/// Grid indices of face column j.
std::array<int, 3> face_node(const UniformGrid& grid, Face f, int j);
/// Number of nodes on an interior depth-plane.
int plane_cols(const UniformGrid& grid);
std::array<int, 3> plane_node(const UniformGrid& grid, int plane_index, int j);

/// Explicit second-order stepper for eps u_tt = lap(u) (+ plane source).
/// One instance runs once; results are read back afterwards.
class WaveSim {
 public:
  WaveSim(const UniformGrid& grid, const TimeAxis& axis, NodeField eps,
          double cfl_safety = 0.5);

  void set_face_bc(Face f, FaceBC bc);
  /// Volumetric injection f(t)/dz on the grid plane nearest src.z0.
  void set_plane_source(const SourceSpec& src);
  /// Neumann data on a face (implies FaceBC::NeumannData). `data` rows must
  /// cover all time nodes; row k is used while stepping from t_k to t_{k+1}.
  void set_neumann_data(Face f, const TraceMatrix* data);

  void request_laplace(std::vector<double> s_values);
  void request_full_history();
  int request_plane_traces(int depth_plane_index);
  int request_face_traces(Face f);
  void set_vtk_dump(int every_steps, std::string directory);

  void run();

  const UniformGrid& grid() const { return grid_; }
  const TimeAxis& axis() const { return axis_; }
  /// Streaming transform of the full field at s_values[i].
  const NodeField& laplace_field(int i) const { return laplace_fields_[i]; }
  const TraceMatrix& plane_traces(int handle) const {
    return plane_records_[handle].data;
  }
  const TraceMatrix& face_traces(int handle) const {
    return face_records_[handle].data;
  }
  /// Full history; frame k is the field at time tau * k (frame 0 is zero).
  const std::vector<NodeField>& history() const { return history_; }

 private:
  struct PlaneRecord {
    int plane = 0;
    TraceMatrix data;
  };
  struct FaceRecord {
    Face face;
    TraceMatrix data;
  };

  void laplacian(const NodeField& u, NodeField& lap, int step) const;
  void apply_mur(const NodeField& u_old, NodeField& u_new) const;
  void record(const NodeField& u, int k);

  UniformGrid grid_;
  TimeAxis axis_;
  NodeField eps_;
  std::array<FaceBC, 6> bc_;
  std::array<const TraceMatrix*, 6> neumann_{};
  std::optional<SourceSpec> src_;
  int source_plane_ = -1;

  std::vector<double> laplace_s_;
  std::vector<NodeField> laplace_fields_;
  bool want_history_ = false;
  std::vector<NodeField> history_;
  std::vector<PlaneRecord> plane_records_;
  std::vector<FaceRecord> face_records_;
  int vtk_every_ = 0;
  std::string vtk_dir_;
  bool has_run_ = false;
};

/// Forward data run (fp-style): Mur on both depth faces, mirrors laterally,
/// plane source. Records the requested depth planes and optionally streams
/// transforms; `eps_nodal` must be 1 outside the coefficient support.
struct ForwardRequest {
  std::vector<int> record_planes;       // depth plane indices
  std::vector<double> laplace_s;
  bool full_history = false;
  int vtk_every = 0;
  std::string vtk_dir;
};

struct ForwardResult {
  std::vector<TraceMatrix> plane_traces;
  std::vector<NodeField> laplace_fields;
  std::vector<NodeField> history;
};

ForwardResult simulate_forward(const NodeField& eps_nodal,
                               const UniformGrid& grid, const TimeAxis& axis,
                               const SourceSpec& src,
                               const ForwardRequest& req);

/// Neumann data on the whole boundary of a (sub)grid.
struct SurfaceData {
  std::array<TraceMatrix, 6> face;  // indexed by face_id
};

struct StateResult {
  SurfaceData boundary_traces;
  std::vector<NodeField> history;  // filled when keep_history
};

/// State problem on G': eps E_tt = lap E, zero initial data,
/// dE/dn = p on every face of the grid.
StateResult simulate_state(const NodeField& eps_nodal, const UniformGrid& grid,
                           const TimeAxis& axis, const SurfaceData& p,
                           bool keep_history);

/// Adjoint problem: terminal conditions lam(T) = lam_t(T) = 0, Neumann
/// forcing r on the boundary, integrated backward in time via the
/// substitution t -> T - t on the state stepper. r rows must vanish at t = T.
/// history()[k] is lam at time tau * k.
std::vector<NodeField> simulate_adjoint(const NodeField& eps_nodal,
                                        const UniformGrid& grid,
                                        const TimeAxis& axis,
                                        const SurfaceData& r);

/// Exact discrete adjoint of the forward map of WaveSim in the
/// Mur/mirror/plane-source configuration, for functionals of the recorded
/// plane trace. Given loads phi[k] = dF/du^k on the plane (k = 0..steps),
/// returns the nodal derivative dF/d(eps).
///
/// Verified against central finite differences; this is the gradient engine
/// behind the Tikhonov minimization.
NodeField forward_gradient_transpose(
    const NodeField& eps_nodal, const UniformGrid& grid, const TimeAxis& axis,
    const SourceSpec& src, const std::vector<NodeField>& history,
    int plane_index, const TraceMatrix& plane_loads);

}  // namespace epsrec
