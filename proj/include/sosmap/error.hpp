#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sosmap {

enum class ErrorCode {
  InvalidOrder,
  InvalidTau,
  InitialConditionViolated,
  NonpositiveInitial,
  NonFiniteState,
  Overflow,
  NotConstantField,
  ConditionNotSatisfied,
  DenominatorUnderflow,
  SpinOutOfRange,
  InvalidFieldSpec,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sosmap
