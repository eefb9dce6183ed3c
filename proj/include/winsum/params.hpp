#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace winsum {

/// Absolute 1-based stream index. Never wraps.
using Position = std::int64_t;

/// Element values and every sum over a window.
using Value = std::int64_t;

/// Raised for parameters or inputs outside a sketch's configured domain.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Window size, accuracy target and value bound shared by every sketch.
///
/// Window sums are held in 64-bit integers; construction rejects any
/// (n, M) whose product exceeds 2^62 so that sums, their negations and
/// the differences taken during comparisons cannot overflow.
struct Params {
  std::int64_t window = 1;
  double eps = 0.1;
  Value value_bound = 1;

  static constexpr std::int64_t kMaxWindowMass = std::int64_t{1} << 62;

  /// Throws ConfigError unless 0 < eps < 1, n >= 1, M >= 1 and n*M <= 2^62.
  static Params make(std::int64_t window, double eps, Value value_bound);

  void validate() const;

  /// Throws ConfigError when |x| > M.
  void check_value(Value x) const {
    if (x > value_bound || x < -value_bound) {
      throw ConfigError("element " + std::to_string(x) + " exceeds value bound " +
                        std::to_string(value_bound));
    }
  }

  friend bool operator==(const Params&, const Params&) = default;
};

}  // namespace winsum
