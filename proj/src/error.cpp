#include "forestdec/error.hpp"

namespace forestdec {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LoopArc: return "LoopArc";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownArc: return "UnknownArc";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IncompleteLabeling: return "IncompleteLabeling";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnsupportedXSet: return "UnsupportedXSet";
    case ErrorCode::InvalidSource: return "InvalidSource";
    case ErrorCode::UnsatisfiedPrecondition: return "UnsatisfiedPrecondition";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::NotDiregular: return "NotDiregular";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace forestdec
