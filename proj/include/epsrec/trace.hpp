#pragma once

#include <vector>

#include "epsrec/geometry.hpp"

namespace epsrec {

/// Time series for a set of spatial columns: (steps + 1) rows, one per time
/// node including t = 0, times tau * k.
struct TraceMatrix {
  int n_times = 0;
  int n_cols = 0;
  std::vector<double> v;

  TraceMatrix() = default;
  TraceMatrix(int times, int cols)
      : n_times(times), n_cols(cols),
        v(static_cast<size_t>(times) * cols, 0.0) {}

  double& at(int k, int j) { return v[static_cast<size_t>(k) * n_cols + j]; }
  double at(int k, int j) const {
    return v[static_cast<size_t>(k) * n_cols + j];
  }
  bool same_shape(const TraceMatrix& o) const {
    return n_times == o.n_times && n_cols == o.n_cols;
  }
};

/// Boundary measurement record: samples.at(k, j) is the field at nodes[j],
/// time tau * k.
struct TimeTraces {
  BoundaryTag tag = BoundaryTag::Gamma;
  std::vector<Coord> nodes;
  TimeAxis axis;
  TraceMatrix samples;
};

}  // namespace epsrec
