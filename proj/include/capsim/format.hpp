#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

#include "capsim/errors.hpp"

namespace capsim {

/// Shortest decimal string that round-trips the exact double value,
/// independent of locale and platform printf quirks.
inline std::string format_double(double v) {
  char buf[32];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Locale-independent parse of a full token; rejects trailing junk.
inline double parse_double(const std::string& text) {
  double v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const std::from_chars_result res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw input_error("malformed number '" + text + "'");
  }
  return v;
}

}  // namespace capsim
