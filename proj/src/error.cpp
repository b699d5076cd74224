#include "sand/error.hpp"

namespace sand {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InvariantViolation: return "INVARIANT_VIOLATION";
    case ErrorCode::RangeTooSmall: return "RANGE_TOO_SMALL";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::DegenerateDetection: return "DEGENERATE_DETECTION";
    case ErrorCode::InfeasibleCoverage: return "INFEASIBLE_COVERAGE";
    case ErrorCode::Infeasible: return "INFEASIBLE";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::VolumeAboveTopTier: return "VOLUME_ABOVE_TOP_TIER";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::SchemaMismatch: return "SCHEMA_MISMATCH";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace sand
