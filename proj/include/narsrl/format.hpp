#pragma once

#include <charconv>
#include <string>

namespace narsrl {

/// Shortest decimal form that round-trips: "0.5", "-100", "0.37420064675972"...
/// Used everywhere float text must be byte-stable across runs.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace narsrl
