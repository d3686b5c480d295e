#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pacf {

inline constexpr const char* kVersion = "0.1.0";

/// Raised for bad user input: unreadable/malformed files, invalid
/// configuration, unknown model names. The CLI maps it to exit code 2;
/// everything else maps to exit code 3.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ceil(f * n) robust against the fp representation of f (e.g. 0.1 * 200
/// must give 20, not 21).
inline long ceil_frac(double f, long n) {
  double v = f * static_cast<double>(n);
  return static_cast<long>(std::ceil(v - 1e-9));
}

/// floor(f * n) with the same guard in the other direction.
inline long floor_frac(double f, long n) {
  double v = f * static_cast<double>(n);
  return static_cast<long>(std::floor(v + 1e-9));
}

}  // namespace pacf
