#include "epsrec/source.hpp"

namespace epsrec {

double waveform_f(double t, const SourceSpec& src) {
  if (t < 0) throw Error(ErrorKind::InvalidConfig, "waveform time must be >= 0");
  if (t > src.t_prime()) return 0.0;
  return std::sin(src.omega * t);
}

double f_tilde(double s, const SourceSpec& src) {
  if (!(s > 0))
    throw Error(ErrorKind::InvalidConfig, "pseudo frequency must be positive");
  double w = src.omega;
  double val = w * (1.0 - std::exp(-s * src.t_prime())) / (s * s + w * w);
  if (std::abs(val) < 1e-12)
    throw Error(ErrorKind::DegenerateWaveform,
                "f~(s) vanishes at s = " + std::to_string(s));
  return val;
}

}  // namespace epsrec
