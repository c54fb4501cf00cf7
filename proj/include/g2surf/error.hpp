#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace g2surf {

enum class ErrorCode {
  DependentInput,
  BadDimension,
  NotOrthogonal,
  HypothesisViolated,
  OutOfDomain,
  StepTooLarge,
  BranchPoint,
  NotConformal,
  NotClosed,
  DegenerateParallel,
  NotImmersion,
  DegenerateFrame,
  AssociativePoint,
  ConstraintViolated,
  NotInEquator,
  BadConfig,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for all library failures; the code identifies the
/// failing precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::NotConformal: return "NotConformal";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::DegenerateParallel: return "DegenerateParallel";
    case ErrorCode::NotImmersion: return "NotImmersion";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::AssociativePoint: return "AssociativePoint";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::NotInEquator: return "NotInEquator";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace g2surf
