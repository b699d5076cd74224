#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sand {

enum class ErrorCode {
  ParseError,
  InvariantViolation,
  RangeTooSmall,
  DimensionMismatch,
  DegenerateDetection,
  InfeasibleCoverage,
  Infeasible,
  TooLarge,
  VolumeAboveTopTier,
  InvalidArgument,
  SchemaMismatch,
  Io,
};

// Stable machine-readable name, e.g. "RANGE_TOO_SMALL".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sand
