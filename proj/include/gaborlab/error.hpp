#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaborlab {

enum class ErrorCode {
  ParseError,
  SingularGenerator,
  OddDimension,
  DimensionMismatch,
  NotSymplectic,
  GridTooCoarse,
  EmptyTruncation,
  NoConvergence,
  NonPositive,
  UnsupportedDimension,
  UnknownFamily,
  BadRange,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library is reported as an Error carrying
// one of the codes above; the CLI maps codes onto process exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gaborlab
