#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "winsum/params.hpp"
#include "winsum/smooth_histogram.hpp"

namespace winsum {

/// Geometric magnitude buckets [b_i, b_{i+1}) over [1, M] with the most
/// recent position at which a negative element of that magnitude arrived.
///
/// Boundaries follow b_0 = 1, b_{i+1} = b_i + max(1, floor(eps * b_i)) until
/// they pass M, so (b_{i+1} - 1) / b_i <= 1 + eps for every bucket.
class MinTracker {
 public:
  static constexpr Position kNever = 0;

  MinTracker(Value value_bound, double eps);

  static MinTracker restore(Value value_bound, double eps, std::vector<Value> thresholds,
                            std::vector<Position> last_seen);

  /// i with b_i <= magnitude < b_{i+1}. Throws ConfigError outside [1, M].
  [[nodiscard]] std::size_t bucket_index(Value magnitude) const;

  void record(Value magnitude, Position t) { last_seen_[bucket_index(magnitude)] = t; }

  /// Smallest bucket whose last occurrence is after `threshold`.
  [[nodiscard]] std::optional<std::size_t> smallest_active(Position threshold) const noexcept;

  [[nodiscard]] std::size_t bucket_count() const noexcept { return last_seen_.size(); }
  [[nodiscard]] std::span<const Value> thresholds() const noexcept { return thresholds_; }
  [[nodiscard]] std::span<const Position> last_seen() const noexcept { return last_seen_; }
  [[nodiscard]] Value value_bound() const noexcept { return value_bound_; }
  [[nodiscard]] double eps() const noexcept { return eps_; }

  friend bool operator==(const MinTracker&, const MinTracker&) = default;

 private:
  MinTracker() = default;

  Value value_bound_ = 1;
  double eps_ = 0.1;
  std::vector<Value> thresholds_;  // b_0 .. b_{r+1}
  std::vector<Position> last_seen_;
};

/// Nonempty-subarray maximum over the window. Nonnegative answers come from
/// a refined smooth histogram; when every element in the window is negative
/// the answer is minus the lower boundary of the smallest active bucket.
class NonemptySketch {
 public:
  explicit NonemptySketch(const Params& params);

  static NonemptySketch restore(SmoothHistogram sketch, MinTracker tracker,
                                Position last_nonneg);

  void update(Value x);

  /// nullopt before the first element.
  [[nodiscard]] std::optional<Value> query() const;

  [[nodiscard]] const SmoothHistogram& sketch() const noexcept { return sketch_; }
  [[nodiscard]] const MinTracker& tracker() const noexcept { return tracker_; }
  [[nodiscard]] Position last_nonneg() const noexcept { return last_nonneg_; }
  [[nodiscard]] Position now() const noexcept { return sketch_.now(); }
  [[nodiscard]] const Params& params() const noexcept { return sketch_.params(); }

  /// True when the window holds an element >= 0.
  [[nodiscard]] bool nonnegative_regime() const noexcept {
    return last_nonneg_ != MinTracker::kNever && last_nonneg_ > now() - params().window;
  }

  /// Instances plus tracker buckets.
  [[nodiscard]] std::size_t footprint() const noexcept {
    return sketch_.size().instances + tracker_.bucket_count();
  }

  [[nodiscard]] std::optional<std::string> check_invariants() const;

  friend bool operator==(const NonemptySketch&, const NonemptySketch&) = default;

 private:
  NonemptySketch(SmoothHistogram sketch, MinTracker tracker, Position last_nonneg)
      : sketch_(std::move(sketch)), tracker_(std::move(tracker)), last_nonneg_(last_nonneg) {}

  SmoothHistogram sketch_;
  MinTracker tracker_;
  Position last_nonneg_ = MinTracker::kNever;
};

}  // namespace winsum
