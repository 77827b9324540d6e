#pragma once

#include <charconv>
#include <string>

namespace qroute {

/// Shortest decimal form that round-trips to the same double. Locale
/// independent, so CSV output is byte-stable.
inline std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace qroute
