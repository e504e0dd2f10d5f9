#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

enum class ErrorCode {
  DegreeZero,
  NonConvergence,
  Indeterminate,
  NotLFM,
  Degenerate,
  NotSelfMap,
  RadiusTooSmall,
  OriginNotSupported,
  BranchPointProximity,
  PoleInDisk,
  JitterExhausted,
  SyntaxError,
  ZeroDenominator,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the expression parser; `position` is a 0-based byte offset.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hardy
