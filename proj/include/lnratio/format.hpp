#pragma once

#include <charconv>
#include <string>

namespace lnratio {

/// Shortest round-trip decimal form of x ("-0" prints as "0").
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace lnratio
