#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace accelfront {

enum class ErrorKind {
  NotPowerOfTwo,
  NonPositiveLength,
  LengthMismatch,
  NonlinearVariant,
  SolverSingular,
  ParameterOutOfRange,
  KernelInvalid,
  NotMonostable,
  EndpointNotZero,
  DegenerateAtZero,
  InvalidConfig,
  GuardBreached,
  LambdaOutOfRange,
  InfinitePosition,
  ThresholdsNotSpanned,
  WindowOutOfDomain,
  InsufficientPoints,
  PreconditionViolated,
  ZeroInitialCondition,
  DomainTooSmall,
  UnknownKey,
  MissingRequired,
  ValidationFailed,
  UnknownPreset,
  IoFailure,
  ParseError,
  EmptySeries,
};

/// Stable category name, used as the CLI failure message prefix.
std::string_view kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the boundary guard trips; carries the simulated time of the breach.
class GuardBreachedError : public Error {
 public:
  GuardBreachedError(double breach_time, const std::string& message)
      : Error(ErrorKind::GuardBreached, message), breach_time_(breach_time) {}

  double breach_time() const noexcept { return breach_time_; }

 private:
  double breach_time_;
};

}  // namespace accelfront
