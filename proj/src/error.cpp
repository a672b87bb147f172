#include "drfeas/error.hpp"

namespace drfeas {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InvalidSet: return "InvalidSet";
    case ErrorCode::InvalidSubspace: return "InvalidSubspace";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace drfeas
