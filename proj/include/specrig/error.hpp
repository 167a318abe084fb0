#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace specrig {

// Domain failures carry a stable machine-readable code (surfaced by the CLI
// as "error: <code>") alongside the human-readable message.
struct DomainError : std::runtime_error {
  std::string code;
  DomainError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
  throw DomainError(code, msg);
}

namespace errc {
inline constexpr const char* parse = "ParseError";
inline constexpr const char* invalid = "InvalidInput";
inline constexpr const char* finite_index = "FiniteIndex";
inline constexpr const char* unbounded = "Unbounded";
inline constexpr const char* depth_exhausted = "DepthExhausted";
inline constexpr const char* insufficient_depth = "InsufficientDepth";
inline constexpr const char* search_exhausted = "SearchExhausted";
inline constexpr const char* not_invertible = "NotInvertible";
}  // namespace errc

}  // namespace specrig
