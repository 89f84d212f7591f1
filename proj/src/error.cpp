#include "equistate/error.hpp"

namespace equistate {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::InexactImage: return "InexactImage";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ChartFailure: return "ChartFailure";
    case ErrorKind::ExcludedPoint: return "ExcludedPoint";
    case ErrorKind::ExcludedAnchor: return "ExcludedAnchor";
    case ErrorKind::NotInjectiveOnSupport: return "NotInjectiveOnSupport";
    case ErrorKind::NotInjectiveOnPatch: return "NotInjectiveOnPatch";
    case ErrorKind::NonPositiveJacobian: return "NonPositiveJacobian";
    case ErrorKind::RuleMismatch: return "RuleMismatch";
    case ErrorKind::NotAVertex: return "NotAVertex";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace equistate
