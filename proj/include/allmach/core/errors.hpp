#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace allmach {

enum class ErrorKind {
  NonPositiveDensity,
  NonPositivePressure,
  InvalidPrimitive,
  InvalidGrid,
  ZeroWaveSpeed,
  InadmissibleAverage,
  EllipticSolveFailure,
  SingularOperator,
  GridMismatch,
  VacuumFormation,
  NonFinite,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the solver library. `kind()` lets callers map
/// numerical failures and configuration problems to different exit paths.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Config problems are the caller's fault, everything else is numerics.
  bool is_config_error() const noexcept {
    return kind_ == ErrorKind::InvalidConfig || kind_ == ErrorKind::InvalidGrid ||
           kind_ == ErrorKind::GridMismatch;
  }

 private:
  ErrorKind kind_;
};

}  // namespace allmach
