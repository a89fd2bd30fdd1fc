#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace dimred {

// Shortest decimal rendering that round-trips to the same binary64 value.
// Used everywhere a double is serialized, so outputs are byte-deterministic.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace dimred
