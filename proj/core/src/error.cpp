#include "accelfront/error.hpp"

namespace accelfront {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonlinearVariant: return "NonlinearVariant";
    case ErrorKind::SolverSingular: return "SolverSingular";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::KernelInvalid: return "KernelInvalid";
    case ErrorKind::NotMonostable: return "NotMonostable";
    case ErrorKind::EndpointNotZero: return "EndpointNotZero";
    case ErrorKind::DegenerateAtZero: return "DegenerateAtZero";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::GuardBreached: return "GuardBreached";
    case ErrorKind::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorKind::InfinitePosition: return "InfinitePosition";
    case ErrorKind::ThresholdsNotSpanned: return "ThresholdsNotSpanned";
    case ErrorKind::WindowOutOfDomain: return "WindowOutOfDomain";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ZeroInitialCondition: return "ZeroInitialCondition";
    case ErrorKind::DomainTooSmall: return "DomainTooSmall";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::MissingRequired: return "MissingRequired";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptySeries: return "EmptySeries";
  }
  return "Unknown";
}

}  // namespace accelfront
