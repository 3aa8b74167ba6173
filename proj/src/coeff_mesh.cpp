#include "epsrec/coeff_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epsrec {

namespace {
std::string coord_str(const Coord& p, int dim) {
  std::ostringstream os;
  os << "(";
  for (int a = 0; a < dim; ++a) os << (a ? "," : "") << p[a];
  os << ")";
  return os.str();
}
}  // namespace

QuadtreeCoeffMesh::QuadtreeCoeffMesh(const RectDomain& domain,
                                     std::array<int, 3> root_counts,
                                     int max_level, double initial_value)
    : domain_(domain), root_counts_(root_counts), max_level_(max_level) {
  for (int a = domain.dim; a < 3; ++a) root_counts_[a] = 1;
  for (int a = 0; a < domain.dim; ++a) {
    if (root_counts_[a] < 1)
      throw Error(ErrorKind::InvalidGeometry, "root cell counts must be >= 1");
  }
  int n0 = root_counts_[0], n1 = root_counts_[1], n2 = root_counts_[2];
  nodes_.reserve(static_cast<size_t>(n0) * n1 * n2);
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i0 = 0; i0 < n0; ++i0) {
        Node c;
        std::array<int, 3> idx{i0, i1, i2};
        for (int a = 0; a < domain.dim; ++a) {
          double w = domain.extent(a) / root_counts_[a];
          c.lo[a] = domain.lo[a] + w * idx[a];
          c.hi[a] = (idx[a] + 1 == root_counts_[a]) ? domain.hi[a]
                                                    : domain.lo[a] + w * (idx[a] + 1);
        }
        c.value = initial_value;
        nodes_.push_back(c);
      }
  rebuild_leaf_index();
}

void QuadtreeCoeffMesh::rebuild_leaf_index() {
  leaves_.clear();
  leaf_pos_.assign(nodes_.size(), -1);
  int n_roots = root_counts_[0] * root_counts_[1] * root_counts_[2];
  // DFS from each root in order
  std::vector<int> stack;
  for (int r = 0; r < n_roots; ++r) {
    stack.push_back(r);
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      const Node& c = nodes_[id];
      if (c.first_child < 0) {
        leaf_pos_[id] = static_cast<int>(leaves_.size());
        leaves_.push_back(id);
      } else {
        int kids = 1 << domain_.dim;
        for (int k = kids - 1; k >= 0; --k) stack.push_back(c.first_child + k);
      }
    }
  }
}

std::vector<double> QuadtreeCoeffMesh::values() const {
  std::vector<double> out(leaves_.size());
  for (size_t i = 0; i < leaves_.size(); ++i) out[i] = nodes_[leaves_[i]].value;
  return out;
}

void QuadtreeCoeffMesh::set_values(const std::vector<double>& vals) {
  if (vals.size() != leaves_.size())
    throw Error(ErrorKind::DimensionMismatch,
                "value count does not match leaf count");
  for (size_t i = 0; i < leaves_.size(); ++i) nodes_[leaves_[i]].value = vals[i];
}

void QuadtreeCoeffMesh::clamp_values(double lo, double hi) {
  for (int id : leaves_)
    nodes_[id].value = std::clamp(nodes_[id].value, lo, hi);
}

RectDomain QuadtreeCoeffMesh::leaf_box(int leaf_id) const {
  const Node& c = nodes_[leaves_[leaf_id]];
  return RectDomain(c.lo, c.hi, domain_.dim);
}

double QuadtreeCoeffMesh::leaf_volume(int leaf_id) const {
  const Node& c = nodes_[leaves_[leaf_id]];
  double vol = 1;
  for (int a = 0; a < domain_.dim; ++a) vol *= c.hi[a] - c.lo[a];
  return vol;
}

Coord QuadtreeCoeffMesh::leaf_center(int leaf_id) const {
  const Node& c = nodes_[leaves_[leaf_id]];
  Coord p{0, 0, 0};
  for (int a = 0; a < domain_.dim; ++a) p[a] = 0.5 * (c.lo[a] + c.hi[a]);
  return p;
}

int QuadtreeCoeffMesh::locate(const Coord& p) const {
  if (!domain_.contains_closed(p, 1e-12 * domain_.min_extent()))
    throw Error(ErrorKind::InvalidGeometry, "point outside coefficient domain",
                coord_str(p, domain_.dim));
  std::array<int, 3> ri{0, 0, 0};
  for (int a = 0; a < domain_.dim; ++a) {
    double w = domain_.extent(a) / root_counts_[a];
    int i = static_cast<int>(std::floor((p[a] - domain_.lo[a]) / w));
    ri[a] = std::clamp(i, 0, root_counts_[a] - 1);
  }
  int id = (ri[2] * root_counts_[1] + ri[1]) * root_counts_[0] + ri[0];
  while (nodes_[id].first_child >= 0) {
    const Node& c = nodes_[id];
    int child = 0;
    for (int a = 0; a < domain_.dim; ++a) {
      double mid = 0.5 * (c.lo[a] + c.hi[a]);
      if (p[a] >= mid) child |= (1 << a);
    }
    id = c.first_child + child;
  }
  int pos = leaf_pos_[id];
  if (pos < 0) throw Error(ErrorKind::InvalidGeometry, "leaf lookup failed");
  return pos;
}

void QuadtreeCoeffMesh::for_each_face_pair(
    const std::function<void(int, int, int, double)>& fn) const {
  int nl = n_leaves();
  double tol = 1e-12 * domain_.min_extent();
  for (int a_id = 0; a_id < nl; ++a_id) {
    const Node& A = nodes_[leaves_[a_id]];
    for (int b_id = a_id + 1; b_id < nl; ++b_id) {
      const Node& B = nodes_[leaves_[b_id]];
      for (int ax = 0; ax < domain_.dim; ++ax) {
        bool touch_hi = std::abs(A.hi[ax] - B.lo[ax]) < tol;
        bool touch_lo = std::abs(B.hi[ax] - A.lo[ax]) < tol;
        if (!touch_hi && !touch_lo) continue;
        double measure = 1.0;
        bool overlap = true;
        for (int t = 0; t < domain_.dim; ++t) {
          if (t == ax) continue;
          double lo = std::max(A.lo[t], B.lo[t]);
          double hi = std::min(A.hi[t], B.hi[t]);
          if (hi - lo <= tol) {
            overlap = false;
            break;
          }
          measure *= hi - lo;
        }
        if (overlap) {
          fn(a_id, b_id, ax, measure);
          break;  // a pair can share at most one face
        }
      }
    }
  }
}

RefineResult refine_cells(const QuadtreeCoeffMesh& mesh,
                          const std::vector<int>& marked_leaf_ids) {
  RefineResult out;
  out.mesh = mesh;
  QuadtreeCoeffMesh& m = out.mesh;
  int kids = 1 << m.domain_.dim;
  for (int leaf_id : marked_leaf_ids) {
    if (leaf_id < 0 || leaf_id >= mesh.n_leaves())
      throw Error(ErrorKind::InvalidGeometry,
                  "marked id outside mesh: " + std::to_string(leaf_id));
    int node_id = m.leaves_[leaf_id];  // ids valid: leaves_ unchanged until rebuild
    QuadtreeCoeffMesh::Node& parent = m.nodes_[node_id];
    if (parent.first_child >= 0) continue;  // duplicate mark
    if (parent.level >= m.max_level_) {
      ++out.skipped_at_max;
      continue;
    }
    int first = static_cast<int>(m.nodes_.size());
    for (int k = 0; k < kids; ++k) {
      QuadtreeCoeffMesh::Node child;
      child.level = m.nodes_[node_id].level + 1;
      child.value = m.nodes_[node_id].value;
      for (int a = 0; a < m.domain_.dim; ++a) {
        const auto& par = m.nodes_[node_id];
        double mid = 0.5 * (par.lo[a] + par.hi[a]);
        if (k & (1 << a)) {
          child.lo[a] = mid;
          child.hi[a] = par.hi[a];
        } else {
          child.lo[a] = par.lo[a];
          child.hi[a] = mid;
        }
      }
      m.nodes_.push_back(child);
    }
    m.nodes_[node_id].first_child = first;
    ++out.refined;
  }
  m.rebuild_leaf_index();
  return out;
}

NodeField coeff_to_grid(const QuadtreeCoeffMesh& mesh, const UniformGrid& grid,
                        double outside_value) {
  NodeField out(grid, outside_value);
  int dim = grid.dim();
  int probes = 1 << dim;
  const RectDomain& md = mesh.domain();
  double tol = 1e-12 * md.min_extent();
  int n2 = (dim == 3) ? grid.counts[2] : 1;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < grid.counts[1]; ++i1)
      for (int i0 = 0; i0 < grid.counts[0]; ++i0) {
        Coord p = grid.node(i0, i1, i2);
        if (!md.contains_closed(p, tol)) continue;
        double acc = 0;
        for (int q = 0; q < probes; ++q) {
          Coord pp = p;
          for (int a = 0; a < dim; ++a) {
            double off = 0.25 * grid.spacing[a];
            pp[a] += (q & (1 << a)) ? off : -off;
            pp[a] = std::clamp(pp[a], md.lo[a] + tol, md.hi[a] - tol);
          }
          acc += mesh.value_at(pp);
        }
        out.at(i0, i1, i2) = acc / probes;
      }
  return out;
}

std::vector<double> coeff_from_grid_transpose(const QuadtreeCoeffMesh& mesh,
                                              const UniformGrid& grid,
                                              const NodeField& nodal) {
  std::vector<double> out(static_cast<size_t>(mesh.n_leaves()), 0.0);
  int dim = grid.dim();
  int probes = 1 << dim;
  const RectDomain& md = mesh.domain();
  double tol = 1e-12 * md.min_extent();
  int n2 = (dim == 3) ? grid.counts[2] : 1;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < grid.counts[1]; ++i1)
      for (int i0 = 0; i0 < grid.counts[0]; ++i0) {
        Coord p = grid.node(i0, i1, i2);
        if (!md.contains_closed(p, tol)) continue;
        double g = nodal.at(i0, i1, i2) / probes;
        for (int q = 0; q < probes; ++q) {
          Coord pp = p;
          for (int a = 0; a < dim; ++a) {
            double off = 0.25 * grid.spacing[a];
            pp[a] += (q & (1 << a)) ? off : -off;
            pp[a] = std::clamp(pp[a], md.lo[a] + tol, md.hi[a] - tol);
          }
          out[static_cast<size_t>(mesh.locate(pp))] += g;
        }
      }
  return out;
}

GridToCoeffResult grid_to_coeff(const NodeField& nodal, const UniformGrid& grid,
                                const QuadtreeCoeffMesh& mesh) {
  GridToCoeffResult res;
  int nl = mesh.n_leaves();
  res.values.assign(nl, 0.0);
  std::vector<long> counts(nl, 0);
  int dim = grid.dim();
  double tol = 1e-9 * grid.min_spacing();
  int n2 = (dim == 3) ? grid.counts[2] : 1;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < grid.counts[1]; ++i1)
      for (int i0 = 0; i0 < grid.counts[0]; ++i0) {
        Coord p = grid.node(i0, i1, i2);
        if (!mesh.domain().contains_closed(p, 0.0)) continue;
        int id = -1;
        {
          // strictly interior test against the owning leaf
          Coord pc = p;
          for (int a = 0; a < dim; ++a)
            pc[a] = std::clamp(pc[a], mesh.domain().lo[a] + tol,
                               mesh.domain().hi[a] - tol);
          id = mesh.locate(pc);
          RectDomain box = mesh.leaf_box(id);
          bool interior = true;
          for (int a = 0; a < dim; ++a)
            if (p[a] <= box.lo[a] + tol || p[a] >= box.hi[a] - tol)
              interior = false;
          if (!interior) continue;
        }
        res.values[id] += nodal.at(i0, i1, i2);
        counts[id] += 1;
      }
  for (int id = 0; id < nl; ++id) {
    if (counts[id] > 0) {
      res.values[id] /= counts[id];
    } else {
      // nearest grid node to the cell center
      Coord c = mesh.leaf_center(id);
      int j0 = grid.nearest_index(0, c[0]);
      int j1 = grid.nearest_index(1, c[1]);
      int j2 = (dim == 3) ? grid.nearest_index(2, c[2]) : 0;
      res.values[id] = nodal.at(j0, j1, j2);
      res.empty_cells.push_back(id);
    }
  }
  return res;
}

int count_components(const QuadtreeCoeffMesh& mesh,
                     const std::vector<bool>& keep) {
  int nl = mesh.n_leaves();
  std::vector<std::vector<int>> adj(nl);
  mesh.for_each_face_pair([&](int a, int b, int, double) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  });
  std::vector<int> comp(nl, -1);
  int n_comp = 0;
  std::vector<int> stack;
  for (int s = 0; s < nl; ++s) {
    if (!keep[s] || comp[s] >= 0) continue;
    stack.push_back(s);
    comp[s] = n_comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (keep[w] && comp[w] < 0) {
          comp[w] = comp[u];
          stack.push_back(w);
        }
    }
    ++n_comp;
  }
  return n_comp;
}

}  // namespace epsrec
