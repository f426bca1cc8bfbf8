#pragma once

#include <stdexcept>
#include <string>

namespace forestdec {

enum class ErrorCode {
  LoopArc,
  OutOfRange,
  UnknownVertex,
  UnknownArc,
  PreconditionViolated,
  IncompleteLabeling,
  NotAPath,
  NotACycle,
  BadParameter,
  UnsupportedXSet,
  InvalidSource,
  UnsatisfiedPrecondition,
  InvalidDecomposition,
  NotDiregular,
  UnsupportedSpec,
  ParseError,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace forestdec
