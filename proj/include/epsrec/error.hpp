#pragma once

#include <stdexcept>
#include <string>

namespace epsrec {

enum class ErrorKind {
  InvalidGeometry,
  InvalidConfig,
  CflViolation,
  Divergence,
  PositivityViolation,
  DegenerateWaveform,
  SolverFailure,
  DimensionMismatch,
  Compatibility,
  NoArrival,
  Truncation,
  CoverageGap,
  Io,
};

const char* error_kind_name(ErrorKind k);

/// All failures surface as this exception; `where` carries the offending
/// location (grid node, boundary point, pseudo-frequency) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string where = {})
      : std::runtime_error(format(kind, message, where)),
        kind_(kind),
        where_(std::move(where)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& where() const { return where_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            const std::string& where);
  ErrorKind kind_;
  std::string where_;
};

}  // namespace epsrec
