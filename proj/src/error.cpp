#include "epsrec/error.hpp"

namespace epsrec {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidGeometry: return "invalid-geometry";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::CflViolation: return "cfl-violation";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::PositivityViolation: return "positivity-violation";
    case ErrorKind::DegenerateWaveform: return "degenerate-waveform";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Compatibility: return "compatibility";
    case ErrorKind::NoArrival: return "no-arrival";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::CoverageGap: return "coverage-gap";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

std::string Error::format(ErrorKind kind, const std::string& message,
                          const std::string& where) {
  std::string s = std::string(error_kind_name(kind)) + ": " + message;
  if (!where.empty()) s += " [at " + where + "]";
  return s;
}

}  // namespace epsrec
