#include "skintone/error.hpp"

namespace skintone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfGamut: return "OutOfGamut";
    case ErrorCode::kUndefinedHue: return "UndefinedHue";
    case ErrorCode::kUndefinedIta: return "UndefinedIta";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInsufficientGroupSize: return "InsufficientGroupSize";
    case ErrorCode::kOutcomeMismatch: return "OutcomeMismatch";
    case ErrorCode::kUnknownGroup: return "UnknownGroup";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kInvalidP: return "InvalidP";
    case ErrorCode::kMissingScore: return "MissingScore";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace skintone
