#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equistate {

enum class ErrorKind {
  NonPositiveArgument,
  MonotonicityViolation,
  EvaluationFailure,
  InexactImage,
  SpaceMismatch,
  PrecisionExhausted,
  ChartFailure,
  ExcludedPoint,
  ExcludedAnchor,
  NotInjectiveOnSupport,
  NotInjectiveOnPatch,
  NonPositiveJacobian,
  RuleMismatch,
  NotAVertex,
  NotCoprime,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace equistate
