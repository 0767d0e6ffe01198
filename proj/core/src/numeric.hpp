#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace fracorder::detail {

// x^e - y^e for x >= y >= 0, free of cancellation for small e or x ~ y.
inline double pow_difference(double x, double y, double e) {
  if (y <= 0.0) return std::pow(x, e);
  return std::pow(y, e) * std::expm1(e * std::log(x / y));
}

// Shortest representation that parses back to the same double.
inline std::string format_shortest(double value) {
  char buffer[64];
  auto const result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace fracorder::detail
