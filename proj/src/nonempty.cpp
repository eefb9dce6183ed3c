#include "winsum/nonempty.hpp"

#include <algorithm>
#include <cmath>

namespace winsum {

MinTracker::MinTracker(Value value_bound, double eps) : value_bound_(value_bound), eps_(eps) {
  if (value_bound < 1) throw ConfigError("value bound must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  Value b = 1;
  thresholds_.push_back(b);
  while (b <= value_bound_) {
    const auto step = static_cast<Value>(std::floor(eps_ * static_cast<double>(b)));
    b += std::max<Value>(1, step);
    thresholds_.push_back(b);
  }
  last_seen_.assign(thresholds_.size() - 1, kNever);
}

MinTracker MinTracker::restore(Value value_bound, double eps, std::vector<Value> thresholds,
                               std::vector<Position> last_seen) {
  MinTracker expected(value_bound, eps);
  if (thresholds != expected.thresholds_) {
    throw ConfigError("tracker thresholds do not match (M, eps)");
  }
  if (last_seen.size() != expected.last_seen_.size()) {
    throw ConfigError("tracker bucket count mismatch");
  }
  expected.last_seen_ = std::move(last_seen);
  return expected;
}

std::size_t MinTracker::bucket_index(Value magnitude) const {
  if (magnitude < 1 || magnitude > value_bound_) {
    throw ConfigError("magnitude " + std::to_string(magnitude) + " outside [1, M]");
  }
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), magnitude);
  return static_cast<std::size_t>(it - thresholds_.begin()) - 1;
}

std::optional<std::size_t> MinTracker::smallest_active(Position threshold) const noexcept {
  for (std::size_t i = 0; i < last_seen_.size(); ++i) {
    if (last_seen_[i] != kNever && last_seen_[i] > threshold) return i;
  }
  return std::nullopt;
}

NonemptySketch::NonemptySketch(const Params& params)
    : sketch_(params, PruneRule::refined(params.eps)),
      tracker_(params.value_bound, params.eps) {}

NonemptySketch NonemptySketch::restore(SmoothHistogram sketch, MinTracker tracker,
                                       Position last_nonneg) {
  if (sketch.rule().kind() != PruneRule::Kind::kRefined) {
    throw ConfigError("nonempty sketch requires the refined rule");
  }
  if (tracker.value_bound() != sketch.params().value_bound ||
      tracker.eps() != sketch.params().eps) {
    throw ConfigError("tracker parameters differ from sketch parameters");
  }
  NonemptySketch out(std::move(sketch), std::move(tracker), last_nonneg);
  if (auto violation = out.check_invariants()) throw ConfigError(*violation);
  return out;
}

void NonemptySketch::update(Value x) {
  sketch_.update(x);
  if (x >= 0) {
    last_nonneg_ = sketch_.now();
  } else {
    tracker_.record(-x, sketch_.now());
  }
}

std::optional<Value> NonemptySketch::query() const {
  if (now() == 0) return std::nullopt;
  if (nonnegative_regime()) return sketch_.query();
  const auto bucket = tracker_.smallest_active(now() - params().window);
  if (!bucket) return std::nullopt;
  return -tracker_.thresholds()[*bucket];
}

std::optional<std::string> NonemptySketch::check_invariants() const {
  if (auto v = sketch_.check_invariants()) return v;
  if (last_nonneg_ < 0 || last_nonneg_ > now()) return std::string("last_nonneg out of range");
  for (Position p : tracker_.last_seen()) {
    if (p < 0 || p > now()) return std::string("tracker timestamp out of range");
  }
  if (now() > 0 && !nonnegative_regime() && !tracker_.smallest_active(now() - params().window)) {
    return std::string("window has neither a nonnegative nor a negative element");
  }
  return std::nullopt;
}

}  // namespace winsum
