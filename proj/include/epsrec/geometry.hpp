#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "epsrec/error.hpp"

namespace epsrec {

using Coord = std::array<double, 3>;

/// Axis-aligned box. `dim` is 2 or 3; the depth axis (direction of the
/// incident wave) is always the last one, `dim - 1`. Unused components are 0.
struct RectDomain {
  Coord lo{0, 0, 0};
  Coord hi{0, 0, 0};
  int dim = 2;

  RectDomain() = default;
  RectDomain(Coord lo_, Coord hi_, int dim_);

  double extent(int axis) const { return hi[axis] - lo[axis]; }
  double min_extent() const;
  bool contains(const Coord& p) const;
  /// Intersection test with closed box semantics.
  bool contains_closed(const Coord& p, double tol = 0.0) const;
  std::string describe() const;
};

/// Tensor-product node grid over a RectDomain.
struct UniformGrid {
  RectDomain domain;
  std::array<double, 3> spacing{0, 0, 0};
  std::array<int, 3> counts{1, 1, 1};  // nodes per axis; unused axes hold 1

  int dim() const { return domain.dim; }
  long total_nodes() const {
    return static_cast<long>(counts[0]) * counts[1] * counts[2];
  }
  long stride(int axis) const {
    long s = 1;
    for (int a = 0; a < axis; ++a) s *= counts[a];
    return s;
  }
  long index(int i0, int i1, int i2 = 0) const {
    return (static_cast<long>(i2) * counts[1] + i1) * counts[0] + i0;
  }
  double coord(int axis, int i) const {
    return domain.lo[axis] + spacing[axis] * i;
  }
  Coord node(int i0, int i1, int i2 = 0) const {
    Coord p{0, 0, 0};
    p[0] = coord(0, i0);
    p[1] = coord(1, i1);
    if (dim() == 3) p[2] = coord(2, i2);
    return p;
  }
  double min_spacing() const;
  /// Nearest node index along `axis` for coordinate x (clamped to range).
  int nearest_index(int axis, double x) const;
};

/// Covers `domain` with spacing at most `target_spacing` per axis; the actual
/// spacing snaps to extent / ceil(extent / target).
UniformGrid build_grid(const RectDomain& domain, double target_spacing);

/// Uniform partition of (0, T] into `steps` intervals of length tau = T/steps.
struct TimeAxis {
  double T = 0;
  double tau = 0;
  int steps = 0;

  static TimeAxis with_steps(double T, int steps);
  /// tau chosen as the largest step with tau <= safety * h_min / sqrt(dim)
  /// that divides T into an integer number of steps.
  static TimeAxis from_cfl(double T, double h_min, int dim,
                           double safety = 0.5);
  double time(int k) const { return tau * k; }
};

/// One face of a box: `axis` in [0, dim), `side` 0 = lo, 1 = hi.
struct Face {
  int axis = 0;
  int side = 0;
  bool operator==(const Face& o) const {
    return axis == o.axis && side == o.side;
  }
};

std::vector<Face> all_faces(int dim);

enum class BoundaryTag {
  Front,        // depth-axis hi face of G (source side)
  Back,         // depth-axis lo face of G
  Lateral,      // remaining faces of G
  Gamma,        // measurement patch: depth plane z = c', lateral extents of Omega
  GammaPrime,   // Gamma extended to the configured lateral extents
};

const char* boundary_tag_name(BoundaryTag t);

/// A tagged boundary piece. For Front/Back/Lateral, `patch` is the face of G;
/// for Gamma/GammaPrime it is a rectangle on the plane depth = c' (the patch
/// has zero thickness along the depth axis).
struct BoundaryRegion {
  BoundaryTag tag;
  RectDomain patch;
};

}  // namespace epsrec
