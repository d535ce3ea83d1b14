#include "simpeval/error.hpp"

namespace simpeval {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::InvalidSettings: return "InvalidSettings";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::UnknownCriterion: return "UnknownCriterion";
    case ErrorCode::UnknownPrompt: return "UnknownPrompt";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::VariantFailedOrMissing: return "VariantFailedOrMissing";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SessionPending: return "SessionPending";
    case ErrorCode::ProviderMisconfigured: return "ProviderMisconfigured";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace simpeval
