#pragma once

#include <cmath>

#include "epsrec/error.hpp"

namespace epsrec {

/// Incident plane wave: a single sine burst f(t) = sin(omega t) on [0, t'],
/// t' = 2 pi / omega, emitted at the plane depth = z0 (outside the target
/// region, wave-speed-normalized units).
struct SourceSpec {
  double z0 = 0.0;
  double omega = 30.0;

  double t_prime() const { return 2.0 * M_PI / omega; }
};

/// sin(omega t) on [0, t'], zero afterwards.
double waveform_f(double t, const SourceSpec& src);

/// Laplace transform of the burst: omega (1 - e^{-s t'}) / (s^2 + omega^2).
/// Throws DegenerateWaveform when |f~| < 1e-12.
double f_tilde(double s, const SourceSpec& src);

/// Transform-domain solution for the homogeneous medium,
/// w0(x, s) = e^{-s |z - z0|} / (2 s).
inline double w0_reference(double z, double s, double z0) {
  return std::exp(-s * std::abs(z - z0)) / (2.0 * s);
}

}  // namespace epsrec
