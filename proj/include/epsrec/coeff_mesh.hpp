#pragma once

#include <functional>
#include <vector>

#include "epsrec/field.hpp"
#include "epsrec/geometry.hpp"

namespace epsrec {

/// Adaptive piecewise-constant coefficient mesh over a box domain: a grid of
/// root cells, each a quadtree (2-D) or octree (3-D). Cells partition the
/// domain exactly; every leaf carries one value. Value type for the
/// reconstructed coefficient; immutable ids are leaf positions in DFS order.
class QuadtreeCoeffMesh {
 public:
  QuadtreeCoeffMesh() = default;
  QuadtreeCoeffMesh(const RectDomain& domain, std::array<int, 3> root_counts,
                    int max_level, double initial_value = 1.0);

  const RectDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim; }
  int max_level() const { return max_level_; }

  int n_leaves() const { return static_cast<int>(leaves_.size()); }
  double value(int leaf_id) const { return nodes_[leaves_[leaf_id]].value; }
  void set_value(int leaf_id, double v) { nodes_[leaves_[leaf_id]].value = v; }
  std::vector<double> values() const;
  void set_values(const std::vector<double>& vals);
  void clamp_values(double lo, double hi);

  int leaf_level(int leaf_id) const { return nodes_[leaves_[leaf_id]].level; }
  RectDomain leaf_box(int leaf_id) const;
  double leaf_volume(int leaf_id) const;
  Coord leaf_center(int leaf_id) const;

  /// Leaf containing p (half-open cells; the domain's hi faces are closed).
  /// Throws InvalidGeometry for points outside the domain.
  int locate(const Coord& p) const;
  double value_at(const Coord& p) const { return value(locate(p)); }

  /// Face-adjacent leaf pairs (shared face of positive measure). Callback
  /// args: leaf a, leaf b, axis normal to the face, face measure.
  void for_each_face_pair(
      const std::function<void(int, int, int, double)>& fn) const;

 private:
  struct Node {
    Coord lo{0, 0, 0}, hi{0, 0, 0};
    int level = 0;
    int first_child = -1;  // -1: leaf; else index of 2^dim consecutive kids
    double value = 1.0;
  };

  void rebuild_leaf_index();
  friend struct RefineResult;
  friend RefineResult refine_cells(const QuadtreeCoeffMesh&,
                                   const std::vector<int>&);

  RectDomain domain_;
  std::array<int, 3> root_counts_{1, 1, 1};
  int max_level_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> leaves_;    // node indices, DFS order
  std::vector<int> leaf_pos_;  // node index -> leaf id (-1 for internal)
};

using CoefficientField = QuadtreeCoeffMesh;

struct RefineResult {
  QuadtreeCoeffMesh mesh;
  int refined = 0;           // cells actually split
  int skipped_at_max = 0;    // marked cells already at max level (no-op)
  bool hit_max_level() const { return skipped_at_max > 0; }
};

/// Replaces each marked leaf by 2^dim children inheriting the parent value.
RefineResult refine_cells(const QuadtreeCoeffMesh& mesh,
                          const std::vector<int>& marked_leaf_ids);

/// Nodal coefficient array on `grid`: nodes interior to a cell take the cell
/// value, nodes on shared cell faces take the mean of the adjacent values
/// (realized by averaging 2^dim quarter-spacing probes around the node).
/// Nodes outside the mesh domain take `outside_value`.
NodeField coeff_to_grid(const QuadtreeCoeffMesh& mesh, const UniformGrid& grid,
                        double outside_value);

/// Exact transpose of coeff_to_grid's painting restricted to mesh cells:
/// accumulates nodal values into per-leaf sums with the painting weights.
/// Used to pull nodal gradients back onto cells.
std::vector<double> coeff_from_grid_transpose(const QuadtreeCoeffMesh& mesh,
                                              const UniformGrid& grid,
                                              const NodeField& nodal);

struct GridToCoeffResult {
  std::vector<double> values;
  std::vector<int> empty_cells;  // cells with no strictly interior node
};

/// Per-cell mean of strictly interior nodes; cells without one fall back to
/// the value at the nearest node (flagged in `empty_cells`).
GridToCoeffResult grid_to_coeff(const NodeField& nodal, const UniformGrid& grid,
                                const QuadtreeCoeffMesh& mesh);

/// Connected components among leaves selected by `keep`, with face adjacency.
int count_components(const QuadtreeCoeffMesh& mesh,
                     const std::vector<bool>& keep);

}  // namespace epsrec
