#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>

#include "winsum/params.hpp"

namespace winsum {

/// A run of 1s represented by its power-of-two count and the position of
/// its newest 1. The bucket expires once that position leaves the window.
struct EhBucket {
  std::int64_t size = 1;
  Position newest = 0;

  friend bool operator==(const EhBucket&, const EhBucket&) = default;
};

/// Exponential histogram counting 1s in a sliding window of a bit stream.
///
/// With k = ceil(1/eps), each size keeps at most k+1 buckets. The estimate
/// is the total of all buckets minus half of the oldest one.
class ExponentialHistogram {
 public:
  ExponentialHistogram(std::int64_t window, double eps);

  /// Explicit per-size parameter k (cap k+1), bypassing the eps mapping.
  static ExponentialHistogram with_k(std::int64_t window, std::int64_t k);

  /// Throws ConfigError unless bit is 0 or 1.
  void update(Value bit);

  [[nodiscard]] std::int64_t query() const noexcept;

  [[nodiscard]] const std::deque<EhBucket>& buckets() const noexcept { return buckets_; }
  [[nodiscard]] std::int64_t cap() const noexcept { return k_ + 1; }
  [[nodiscard]] std::int64_t k() const noexcept { return k_; }
  [[nodiscard]] Position now() const noexcept { return now_; }
  [[nodiscard]] std::int64_t window() const noexcept { return window_; }

  [[nodiscard]] std::optional<std::string> check_invariants() const;

 private:
  ExponentialHistogram(std::int64_t window, std::int64_t k, bool) : window_(window), k_(k) {}
  void cascade();

  std::int64_t window_;
  std::int64_t k_;
  Position now_ = 0;
  std::int64_t total_ = 0;
  std::deque<EhBucket> buckets_;  // oldest first
};

}  // namespace winsum
