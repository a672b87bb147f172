#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drfeas {

enum class ErrorCode {
  DimensionMismatch,
  RankDeficient,
  InvalidSet,
  InvalidSubspace,
  NoConvergence,
  PreconditionViolated,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. All library failures go through it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace drfeas
