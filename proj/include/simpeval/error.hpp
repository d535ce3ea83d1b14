#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simpeval {

enum class ErrorCode {
  EmptySource,
  EmptyMatrix,
  LambdaOutOfRange,
  DimensionMismatch,
  InvalidArgument,
  InvalidDocument,
  InvalidSettings,
  OutOfScale,
  UnknownCriterion,
  UnknownPrompt,
  UnknownModel,
  VariantFailedOrMissing,
  NotFound,
  SessionPending,
  ProviderMisconfigured,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base exception for every recoverable failure in the library. `field_path`
// names the offending input element (e.g. "criteria[2].weight") when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field_path = {})
      : std::runtime_error(message), code_(code), field_path_(std::move(field_path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field_path() const noexcept { return field_path_; }

 private:
  ErrorCode code_;
  std::string field_path_;
};

}  // namespace simpeval
