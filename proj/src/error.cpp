#include "sosmap/error.hpp"

namespace sosmap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::InitialConditionViolated: return "InitialConditionViolated";
    case ErrorCode::NonpositiveInitial: return "NonpositiveInitial";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotConstantField: return "NotConstantField";
    case ErrorCode::ConditionNotSatisfied: return "ConditionNotSatisfied";
    case ErrorCode::DenominatorUnderflow: return "DenominatorUnderflow";
    case ErrorCode::SpinOutOfRange: return "SpinOutOfRange";
    case ErrorCode::InvalidFieldSpec: return "InvalidFieldSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sosmap
