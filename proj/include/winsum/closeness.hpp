#pragma once

#include <cstdint>

#include "winsum/params.hpp"

namespace winsum {

/// Exact test of `y >= (1 - eps) * x` for nonnegative integer sums.
///
/// eps is turned into the rational b/a given by its shortest decimal
/// representation, and the test becomes a*y >= (a-b)*x in 128-bit
/// arithmetic. If no such rational with a <= 10^18 exists the test falls
/// back to long double with a margin that only ever answers "false" in
/// doubtful cases.
class Closeness {
 public:
  explicit Closeness(double eps);

  /// True iff y >= (1 - eps) * x.
  [[nodiscard]] bool at_least(Value y, Value x) const noexcept;

  /// True iff y < (1 - eps) * x; exact negation of at_least when rational.
  [[nodiscard]] bool strictly_below(Value y, Value x) const noexcept {
    return !at_least(y, x);
  }

  /// True iff |diff| <= eps * |ref|.
  [[nodiscard]] bool within(Value diff, Value ref) const noexcept;

  [[nodiscard]] double eps() const noexcept { return eps_; }
  [[nodiscard]] bool exact() const noexcept { return den_ != 0; }
  [[nodiscard]] std::int64_t numerator() const noexcept { return num_; }
  [[nodiscard]] std::int64_t denominator() const noexcept { return den_; }

 private:
  double eps_;
  std::int64_t num_ = 0;  // b
  std::int64_t den_ = 0;  // a, zero when not representable
};

}  // namespace winsum
