#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "winsum/closeness.hpp"
#include "winsum/params.hpp"
#include "winsum/summary.hpp"

namespace winsum {

/// Which pruning condition the smooth histogram applies.
///
/// Standard(beta) removes an instance when the f values of its neighbours
/// are (1-beta)-close and guarantees an estimate within factor
/// 1 - 1/(2-beta). Refined(eps) additionally requires the suffix maxima to
/// be (1-eps)-close and guarantees factor 1 - eps.
class PruneRule {
 public:
  enum class Kind : std::uint8_t { kStandard = 0, kRefined = 1 };

  static PruneRule standard(double beta) { return PruneRule(Kind::kStandard, beta); }
  static PruneRule refined(double eps) { return PruneRule(Kind::kRefined, eps); }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// beta for Standard, eps for Refined.
  [[nodiscard]] double factor() const noexcept { return close_.eps(); }
  [[nodiscard]] const Closeness& closeness() const noexcept { return close_; }

  /// Relative error the query is guaranteed to stay within (one-sided).
  [[nodiscard]] double guarantee() const noexcept {
    return kind_ == Kind::kRefined ? factor() : 1.0 / (2.0 - factor());
  }

  /// Removal test for the middle of three consecutive instances.
  [[nodiscard]] bool removable(const IntervalSummary& left,
                               const IntervalSummary& right) const noexcept {
    if (!close_.at_least(right.f, left.f)) return false;
    return kind_ == Kind::kStandard || close_.at_least(right.suf, left.suf);
  }

  friend bool operator==(const PruneRule& a, const PruneRule& b) noexcept {
    return a.kind_ == b.kind_ && a.factor() == b.factor();
  }

 private:
  PruneRule(Kind kind, double factor) : kind_(kind), close_(factor) {}

  Kind kind_;
  Closeness close_;
};

std::string to_string(PruneRule::Kind kind);

/// Instance count and a nominal storage estimate (three 64-bit words each).
struct SketchSize {
  std::size_t instances = 0;
  std::size_t bits_estimate = 0;

  friend bool operator==(const SketchSize&, const SketchSize&) = default;
};

/// Removes redundant internal instances in one left-to-right pass. After a
/// removal the same slot is re-tested against its new neighbours. The first
/// and last instances are never removed.
void prune(std::vector<IntervalSummary>& instances, const PruneRule& rule);

/// Drops leading instances while the second one has also left the window
/// (start <= now - n), so at most one expired instance remains in front.
void expire(std::vector<IntervalSummary>& instances, Position now, std::int64_t window);

/// Sliding-window maximum subarray sum sketch built on a smooth histogram of
/// Kadane summaries I_i = [s_i, now], s_1 < ... < s_q = now.
class SmoothHistogram {
 public:
  SmoothHistogram(const Params& params, const PruneRule& rule);

  /// Rebuilds a sketch from snapshot fields. Throws ConfigError when the
  /// data violate any structural invariant.
  static SmoothHistogram restore(const Params& params, const PruneRule& rule, Position now,
                                 std::vector<IntervalSummary> instances);

  /// Appends x to every instance, opens a singleton at the new position,
  /// prunes, then expires.
  void update(Value x);

  /// f(I_1) while the first instance is still inside the window (exact),
  /// otherwise f(I_2). Zero before the first update.
  [[nodiscard]] Value query() const noexcept;

  [[nodiscard]] SketchSize size() const noexcept;
  [[nodiscard]] std::span<const IntervalSummary> instances() const noexcept { return instances_; }
  [[nodiscard]] Position now() const noexcept { return now_; }
  [[nodiscard]] const Params& params() const noexcept { return params_; }
  [[nodiscard]] const PruneRule& rule() const noexcept { return rule_; }

  /// First violated state invariant, or nullopt when all hold.
  [[nodiscard]] std::optional<std::string> check_invariants() const;

  /// Human readable dump for diagnostics.
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const SmoothHistogram& a, const SmoothHistogram& b) {
    return a.params_ == b.params_ && a.rule_ == b.rule_ && a.now_ == b.now_ &&
           a.instances_ == b.instances_;
  }

 private:
  Params params_;
  PruneRule rule_;
  Position now_ = 0;
  std::vector<IntervalSummary> instances_;
};

/// ceil(ln(n*M + 1) / -ln(1 - eps)): geometric levels between 1 and n*M.
std::int64_t geometric_levels(std::int64_t window, Value value_bound, double eps);

/// Upper bound on the instance count implied by the refined structure:
/// two interleaved chains over f and Suf, each with geometric_levels steps.
std::int64_t instance_bound(std::int64_t window, Value value_bound, double eps);

}  // namespace winsum
