#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace timelike {

enum class ErrorCode {
  coordinate_domain,
  degenerate_ray,
  ambiguous_geodesic,
  chart_mismatch,
  collinearity,
  degenerate_configuration,
  precondition,
  no_separator,
  not_in_future,
  unsupported,
  not_timelike_direction,
  null_chord,
  projection_domain,
  not_timelike_separated,
  curve_evaluation,
  domain,
  parse,
  validation,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace timelike
