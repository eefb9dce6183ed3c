#pragma once

#include <algorithm>
#include <span>

#include "winsum/params.hpp"

namespace winsum {

/// Kadane state of one interval [start, now].
///
/// `suf` is the best sum of a suffix ending at the current position and
/// `f` the best sum of any subarray, both clamped at zero (the empty
/// subarray is allowed). 0 <= suf <= f always holds.
struct IntervalSummary {
  Position start = 0;
  Value suf = 0;
  Value f = 0;

  friend bool operator==(const IntervalSummary&, const IntervalSummary&) = default;
};

/// Summary of the one-element interval [t, t]. Throws ConfigError if |x| > M.
IntervalSummary summary_singleton(const Params& params, Value x, Position t);

/// Extends the interval by one element at its end.
constexpr IntervalSummary summary_append(IntervalSummary s, Value x) noexcept {
  s.suf = std::max<Value>(0, s.suf + x);
  s.f = std::max(s.f, s.suf);
  return s;
}

/// Maximum subarray sum of `seq`, empty subarray allowed (so never negative).
constexpr Value kadane_max_subarray(std::span<const Value> seq) noexcept {
  IntervalSummary acc{};
  for (Value x : seq) acc = summary_append(acc, x);
  return acc.f;
}

}  // namespace winsum
