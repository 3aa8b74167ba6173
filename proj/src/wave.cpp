#include "epsrec/wave.hpp"

#include <algorithm>
#include <cmath>

#include "epsrec/io.hpp"

namespace epsrec {

int face_cols(const UniformGrid& grid, Face f) {
  int n = 1;
  for (int a = 0; a < 3; ++a)
    if (a != f.axis) n *= grid.counts[a];
  return n;
}

std::array<int, 3> face_node(const UniformGrid& grid, Face f, int j) {
  std::array<int, 3> idx{0, 0, 0};
  int rem = j;
  for (int a = 0; a < 3; ++a) {
    if (a == f.axis) continue;
    idx[a] = rem % grid.counts[a];
    rem /= grid.counts[a];
  }
  idx[f.axis] = f.side == 0 ? 0 : grid.counts[f.axis] - 1;
  return idx;
}

int plane_cols(const UniformGrid& grid) {
  Face f{grid.dim() - 1, 0};
  return face_cols(grid, f);
}

std::array<int, 3> plane_node(const UniformGrid& grid, int plane_index, int j) {
  Face f{grid.dim() - 1, 0};
  auto idx = face_node(grid, f, j);
  idx[grid.dim() - 1] = plane_index;
  return idx;
}

WaveSim::WaveSim(const UniformGrid& grid, const TimeAxis& axis, NodeField eps,
                 double cfl_safety)
    : grid_(grid), axis_(axis), eps_(std::move(eps)) {
  if (eps_.size() != grid.total_nodes())
    throw Error(ErrorKind::DimensionMismatch,
                "coefficient field does not match grid");
  for (double e : eps_.v)
    if (!(e > 0))
      throw Error(ErrorKind::InvalidConfig, "coefficient must be positive");
  double tau_max =
      cfl_safety * grid.min_spacing() / std::sqrt(double(grid.dim()));
  if (axis.tau > tau_max * (1.0 + 1e-9))
    throw Error(ErrorKind::CflViolation,
                "tau = " + std::to_string(axis.tau) + " exceeds " +
                    std::to_string(tau_max));
  bc_.fill(FaceBC::NeumannMirror);
  int d = grid.dim() - 1;
  bc_[face_id({d, 0})] = FaceBC::MurAbsorbing;
  bc_[face_id({d, 1})] = FaceBC::MurAbsorbing;
}

void WaveSim::set_face_bc(Face f, FaceBC bc) {
  if (bc == FaceBC::MurAbsorbing && f.axis != grid_.dim() - 1)
    throw Error(ErrorKind::InvalidConfig,
                "absorbing faces are supported on the depth axis only");
  bc_[face_id(f)] = bc;
}

void WaveSim::set_plane_source(const SourceSpec& src) {
  src_ = src;
  int d = grid_.dim() - 1;
  source_plane_ = grid_.nearest_index(d, src.z0);
}

void WaveSim::set_neumann_data(Face f, const TraceMatrix* data) {
  if (data->n_times != axis_.steps + 1 || data->n_cols != face_cols(grid_, f))
    throw Error(ErrorKind::DimensionMismatch, "neumann data shape mismatch");
  neumann_[face_id(f)] = data;
  bc_[face_id(f)] = FaceBC::NeumannData;
}

void WaveSim::request_laplace(std::vector<double> s_values) {
  laplace_s_ = std::move(s_values);
  laplace_fields_.assign(laplace_s_.size(), NodeField(grid_, 0.0));
}

void WaveSim::request_full_history() { want_history_ = true; }

int WaveSim::request_plane_traces(int depth_plane_index) {
  PlaneRecord r;
  r.plane = depth_plane_index;
  r.data = TraceMatrix(axis_.steps + 1, plane_cols(grid_));
  plane_records_.push_back(std::move(r));
  return static_cast<int>(plane_records_.size()) - 1;
}

int WaveSim::request_face_traces(Face f) {
  FaceRecord r;
  r.face = f;
  r.data = TraceMatrix(axis_.steps + 1, face_cols(grid_, f));
  face_records_.push_back(std::move(r));
  return static_cast<int>(face_records_.size()) - 1;
}

void WaveSim::set_vtk_dump(int every_steps, std::string directory) {
  vtk_every_ = every_steps;
  vtk_dir_ = std::move(directory);
}

void WaveSim::laplacian(const NodeField& u, NodeField& lap, int step) const {
  const int n0 = grid_.counts[0], n1 = grid_.counts[1], n2 = grid_.counts[2];
  const int dim = grid_.dim();
  const double inv_h2_0 = 1.0 / (grid_.spacing[0] * grid_.spacing[0]);
  const double inv_h2_1 = 1.0 / (grid_.spacing[1] * grid_.spacing[1]);
  const double inv_h2_2 =
      dim == 3 ? 1.0 / (grid_.spacing[2] * grid_.spacing[2]) : 0.0;

  auto refl = [](int i, int n) {
    if (i < 0) return 1;
    if (i >= n) return n - 2;
    return i;
  };
  const long s0 = 1, s1 = n0, s2 = static_cast<long>(n0) * n1;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1) {
      long base = i2 * s2 + i1 * s1;
      for (int i0 = 0; i0 < n0; ++i0) {
        long id = base + i0;
        double c = u.v[id];
        double acc =
            (u.v[base + refl(i0 - 1, n0)] + u.v[base + refl(i0 + 1, n0)] -
             2 * c) *
            inv_h2_0;
        acc += (u.v[i2 * s2 + refl(i1 - 1, n1) * s1 + i0] +
                u.v[i2 * s2 + refl(i1 + 1, n1) * s1 + i0] - 2 * c) *
               inv_h2_1;
        if (dim == 3)
          acc += (u.v[refl(i2 - 1, n2) * s2 + i1 * s1 + i0] +
                  u.v[refl(i2 + 1, n2) * s2 + i1 * s1 + i0] - 2 * c) *
                 inv_h2_2;
        lap.v[id] = acc;
      }
    }
  // Neumann data: ghost = mirror + 2 h p, adds 2 p / h at the face nodes
  for (Face f : all_faces(dim)) {
    const TraceMatrix* p = neumann_[face_id(f)];
    if (!p) continue;
    double coeff = 2.0 / grid_.spacing[f.axis];
    int cols = face_cols(grid_, f);
    for (int j = 0; j < cols; ++j) {
      auto idx = face_node(grid_, f, j);
      lap.v[grid_.index(idx[0], idx[1], idx[2])] += coeff * p->at(step, j);
    }
  }
}

void WaveSim::apply_mur(const NodeField& u_old, NodeField& u_new) const {
  int d = grid_.dim() - 1;
  int nd = grid_.counts[d];
  long sd = grid_.stride(d);
  double h = grid_.spacing[d];
  for (int side = 0; side < 2; ++side) {
    if (bc_[face_id({d, side})] != FaceBC::MurAbsorbing) continue;
    Face f{d, side};
    int cols = face_cols(grid_, f);
    for (int j = 0; j < cols; ++j) {
      auto idx = face_node(grid_, f, j);
      long fid = grid_.index(idx[0], idx[1], idx[2]);
      long iid = fid + (side == 0 ? sd : -sd);
      (void)nd;
      double c = 1.0 / std::sqrt(eps_.v[fid]);
      double mu = (c * axis_.tau - h) / (c * axis_.tau + h);
      u_new.v[fid] = u_old.v[iid] + mu * (u_new.v[iid] - u_old.v[fid]);
    }
  }
}

void WaveSim::record(const NodeField& u, int k) {
  for (auto& pr : plane_records_) {
    int cols = pr.data.n_cols;
    for (int j = 0; j < cols; ++j) {
      auto idx = plane_node(grid_, pr.plane, j);
      pr.data.at(k, j) = u.v[grid_.index(idx[0], idx[1], idx[2])];
    }
  }
  for (auto& fr : face_records_) {
    int cols = fr.data.n_cols;
    for (int j = 0; j < cols; ++j) {
      auto idx = face_node(grid_, fr.face, j);
      fr.data.at(k, j) = u.v[grid_.index(idx[0], idx[1], idx[2])];
    }
  }
  if (!laplace_s_.empty() && k > 0) {
    double w = (k == axis_.steps) ? 0.5 * axis_.tau : axis_.tau;
    for (size_t i = 0; i < laplace_s_.size(); ++i) {
      double e = w * std::exp(-laplace_s_[i] * axis_.time(k));
      auto& acc = laplace_fields_[i];
      for (long n = 0; n < u.size(); ++n) acc.v[n] += e * u.v[n];
    }
  }
  if (want_history_) history_[k] = u;
  if (vtk_every_ > 0 && k % vtk_every_ == 0)
    io::write_vtk_field(vtk_dir_ + "/field_" + std::to_string(k) + ".vtk",
                        grid_, u, "u");
}

void WaveSim::run() {
  if (has_run_) throw Error(ErrorKind::InvalidConfig, "solver already ran");
  has_run_ = true;
  NodeField u0(grid_, 0.0), u1(grid_, 0.0), u2(grid_, 0.0), lap(grid_, 0.0);
  if (want_history_)
    history_.assign(axis_.steps + 1, NodeField(grid_, 0.0));
  record(u1, 0);

  int d = grid_.dim() - 1;
  long sd = grid_.stride(d);
  double hz = grid_.spacing[d];
  const double tau2 = axis_.tau * axis_.tau;

  for (int k = 0; k < axis_.steps; ++k) {
    laplacian(u1, lap, k);
    for (long n = 0; n < u1.size(); ++n)
      u2.v[n] = 2 * u1.v[n] - u0.v[n] + tau2 / eps_.v[n] * lap.v[n];
    if (src_) {
      double f = waveform_f(axis_.time(k), *src_) / hz;
      long base = source_plane_ * sd;
      long plane_sz = sd;  // contiguous along lower axes? only when d is last
      // depth axis is the slowest axis, so the plane is contiguous
      for (long n = 0; n < plane_sz; ++n) {
        long id = base + n;
        u2.v[id] += tau2 / eps_.v[id] * f;
      }
    }
    apply_mur(u1, u2);
    std::swap(u0, u1);
    std::swap(u1, u2);
    if ((k + 1) % 100 == 0 || k + 1 == axis_.steps) {
      double m = 0;
      for (double x : u1.v) m = std::max(m, std::abs(x));
      if (!std::isfinite(m))
        throw Error(ErrorKind::Divergence,
                    "field is not finite at step " + std::to_string(k + 1));
    }
    record(u1, k + 1);
  }
}

ForwardResult simulate_forward(const NodeField& eps_nodal,
                               const UniformGrid& grid, const TimeAxis& axis,
                               const SourceSpec& src,
                               const ForwardRequest& req) {
  WaveSim sim(grid, axis, eps_nodal);
  sim.set_plane_source(src);
  std::vector<int> plane_handles;
  for (int p : req.record_planes)
    plane_handles.push_back(sim.request_plane_traces(p));
  if (!req.laplace_s.empty()) sim.request_laplace(req.laplace_s);
  if (req.full_history) sim.request_full_history();
  if (req.vtk_every > 0) sim.set_vtk_dump(req.vtk_every, req.vtk_dir);
  sim.run();

  ForwardResult out;
  for (int h : plane_handles) out.plane_traces.push_back(sim.plane_traces(h));
  for (size_t i = 0; i < req.laplace_s.size(); ++i)
    out.laplace_fields.push_back(sim.laplace_field(static_cast<int>(i)));
  if (req.full_history) out.history = sim.history();
  return out;
}

StateResult simulate_state(const NodeField& eps_nodal, const UniformGrid& grid,
                           const TimeAxis& axis, const SurfaceData& p,
                           bool keep_history) {
  WaveSim sim(grid, axis, eps_nodal);
  std::vector<int> handles;
  for (Face f : all_faces(grid.dim())) {
    sim.set_neumann_data(f, &p.face[face_id(f)]);
    handles.push_back(sim.request_face_traces(f));
  }
  if (keep_history) sim.request_full_history();
  sim.run();
  StateResult out;
  for (Face f : all_faces(grid.dim()))
    out.boundary_traces.face[face_id(f)] = sim.face_traces(face_id(f));
  if (keep_history) out.history = sim.history();
  return out;
}

std::vector<NodeField> simulate_adjoint(const NodeField& eps_nodal,
                                        const UniformGrid& grid,
                                        const TimeAxis& axis,
                                        const SurfaceData& r) {
  // compatibility: residual must vanish at t = T
  double rmax = 0;
  for (Face f : all_faces(grid.dim())) {
    const TraceMatrix& m = r.face[face_id(f)];
    for (double x : m.v) rmax = std::max(rmax, std::abs(x));
  }
  for (Face f : all_faces(grid.dim())) {
    const TraceMatrix& m = r.face[face_id(f)];
    for (int j = 0; j < m.n_cols; ++j)
      if (std::abs(m.at(axis.steps, j)) > 1e-12 * std::max(1.0, rmax))
        throw Error(ErrorKind::Compatibility,
                    "residual does not vanish at t = T",
                    "face axis " + std::to_string(f.axis) + " side " +
                        std::to_string(f.side));
  }
  SurfaceData rev;
  for (Face f : all_faces(grid.dim())) {
    const TraceMatrix& m = r.face[face_id(f)];
    TraceMatrix t(m.n_times, m.n_cols);
    for (int k = 0; k < m.n_times; ++k)
      for (int j = 0; j < m.n_cols; ++j)
        t.at(k, j) = m.at(m.n_times - 1 - k, j);
    rev.face[face_id(f)] = std::move(t);
  }
  StateResult res = simulate_state(eps_nodal, grid, axis, rev, true);
  std::vector<NodeField> lam(res.history.size(), NodeField());
  for (size_t k = 0; k < res.history.size(); ++k)
    lam[k] = std::move(res.history[res.history.size() - 1 - k]);
  return lam;
}

namespace {

// Transpose of the mirrored stencil (scatter form). Neumann-data terms are
// affine and do not enter the linearization.
void stencil_transpose(const UniformGrid& grid, const NodeField& in,
                       NodeField& out) {
  const int n0 = grid.counts[0], n1 = grid.counts[1], n2 = grid.counts[2];
  const int dim = grid.dim();
  out.fill(0.0);
  const double w0 = 1.0 / (grid.spacing[0] * grid.spacing[0]);
  const double w1 = 1.0 / (grid.spacing[1] * grid.spacing[1]);
  const double w2 = dim == 3 ? 1.0 / (grid.spacing[2] * grid.spacing[2]) : 0.0;
  auto refl = [](int i, int n) {
    if (i < 0) return 1;
    if (i >= n) return n - 2;
    return i;
  };
  const long s1 = n0, s2 = static_cast<long>(n0) * n1;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i0 = 0; i0 < n0; ++i0) {
        long id = i2 * s2 + i1 * s1 + i0;
        double x = in.v[id];
        if (x == 0.0) continue;
        out.v[i2 * s2 + i1 * s1 + refl(i0 - 1, n0)] += x * w0;
        out.v[i2 * s2 + i1 * s1 + refl(i0 + 1, n0)] += x * w0;
        out.v[id] -= 2 * x * w0;
        out.v[i2 * s2 + refl(i1 - 1, n1) * s1 + i0] += x * w1;
        out.v[i2 * s2 + refl(i1 + 1, n1) * s1 + i0] += x * w1;
        out.v[id] -= 2 * x * w1;
        if (dim == 3) {
          out.v[refl(i2 - 1, n2) * s2 + i1 * s1 + i0] += x * w2;
          out.v[refl(i2 + 1, n2) * s2 + i1 * s1 + i0] += x * w2;
          out.v[id] -= 2 * x * w2;
        }
      }
}

}  // namespace

NodeField forward_gradient_transpose(
    const NodeField& eps_nodal, const UniformGrid& grid, const TimeAxis& axis,
    const SourceSpec& src, const std::vector<NodeField>& history,
    int plane_index, const TraceMatrix& plane_loads) {
  (void)src;
  if (static_cast<int>(history.size()) != axis.steps + 1)
    throw Error(ErrorKind::DimensionMismatch, "history does not match axis");
  if (plane_loads.n_times != axis.steps + 1 ||
      plane_loads.n_cols != plane_cols(grid))
    throw Error(ErrorKind::DimensionMismatch, "plane loads shape mismatch");

  const int d = grid.dim() - 1;
  const long sd = grid.stride(d);
  const int nd = grid.counts[d];
  const double hz = grid.spacing[d];
  const double tau = axis.tau;
  const long plane_sz = sd;

  // Mur reflection coefficients on the two depth faces (local wave speed).
  auto mur_mu = [&](long face_node_id) {
    double c = 1.0 / std::sqrt(eps_nodal.v[face_node_id]);
    return (c * tau - hz) / (c * tau + hz);
  };

  // P^T: zero depth-face planes, scatter mu * face value into inner plane.
  auto apply_PT = [&](const NodeField& l) {
    NodeField o = l;
    for (long j = 0; j < plane_sz; ++j) {
      long lo = j, hi = (static_cast<long>(nd) - 1) * sd + j;
      o.v[lo] = 0;
      o.v[hi] = 0;
      o.v[lo + sd] += mur_mu(lo) * l.v[lo];
      o.v[hi - sd] += mur_mu(hi) * l.v[hi];
    }
    return o;
  };
  // Q^T: face value scatters +1 into the inner plane, -mu onto itself.
  auto apply_QT = [&](const NodeField& l) {
    NodeField o(grid, 0.0);
    for (long j = 0; j < plane_sz; ++j) {
      long lo = j, hi = (static_cast<long>(nd) - 1) * sd + j;
      o.v[lo + sd] += l.v[lo];
      o.v[lo] -= mur_mu(lo) * l.v[lo];
      o.v[hi - sd] += l.v[hi];
      o.v[hi] -= mur_mu(hi) * l.v[hi];
    }
    return o;
  };

  NodeField grad(grid, 0.0);
  NodeField lnext(grid, 0.0);   // lambda^{k+1}
  NodeField lnext2(grid, 0.0);  // lambda^{k+2}
  NodeField tmp(grid, 0.0), st(grid, 0.0);

  for (int k = axis.steps; k >= 1; --k) {
    // lambda^k = 2 P^T l^{k+1} + L^T(C P^T l^{k+1}) + Q^T l^{k+1}
    //            - P^T l^{k+2} + phi^k
    NodeField Pl = apply_PT(lnext);
    for (long n = 0; n < Pl.size(); ++n)
      tmp.v[n] = tau * tau / eps_nodal.v[n] * Pl.v[n];
    stencil_transpose(grid, tmp, st);
    NodeField lam = apply_QT(lnext);
    NodeField Pl2 = apply_PT(lnext2);
    for (long n = 0; n < lam.size(); ++n)
      lam.v[n] += 2 * Pl.v[n] + st.v[n] - Pl2.v[n];
    for (int j = 0; j < plane_loads.n_cols; ++j) {
      auto idx = plane_node(grid, plane_index, j);
      lam.v[grid.index(idx[0], idx[1], idx[2])] += plane_loads.at(k, j);
    }
    // accumulate pair k-1: -P^T lam^k . (u^k - 2u^{k-1} + u^{k-2}) / eps
    NodeField Plk = apply_PT(lam);
    const NodeField& uk = history[k];
    const NodeField& uk1 = history[k - 1];
    const NodeField* uk2 = (k >= 2) ? &history[k - 2] : nullptr;
    for (long n = 0; n < grad.size(); ++n) {
      double d2 = uk.v[n] - 2 * uk1.v[n] + (uk2 ? uk2->v[n] : 0.0);
      grad.v[n] -= Plk.v[n] * d2 / eps_nodal.v[n];
    }
    lnext2 = std::move(lnext);
    lnext = std::move(lam);
  }
  return grad;
}

}  // namespace epsrec
