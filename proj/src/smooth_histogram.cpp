#include "winsum/smooth_histogram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace winsum {

std::string to_string(PruneRule::Kind kind) {
  return kind == PruneRule::Kind::kRefined ? "refined" : "standard";
}

void prune(std::vector<IntervalSummary>& instances, const PruneRule& rule) {
  const std::size_t q = instances.size();
  if (q < 3) return;
  // instances[0 .. kept) is the surviving prefix; instances[kept - 1] is the
  // current left neighbour of candidate i.
  std::size_t kept = 1;
  for (std::size_t i = 1; i + 1 < q; ++i) {
    if (rule.removable(instances[kept - 1], instances[i + 1])) continue;
    instances[kept++] = instances[i];
  }
  instances[kept++] = instances[q - 1];
  instances.resize(kept);
}

void expire(std::vector<IntervalSummary>& instances, Position now, std::int64_t window) {
  const Position threshold = now - window;
  std::size_t drop = 0;
  while (drop + 1 < instances.size() && instances[drop + 1].start <= threshold) ++drop;
  instances.erase(instances.begin(), instances.begin() + static_cast<std::ptrdiff_t>(drop));
}

SmoothHistogram::SmoothHistogram(const Params& params, const PruneRule& rule)
    : params_(params), rule_(rule) {
  params_.validate();
}

SmoothHistogram SmoothHistogram::restore(const Params& params, const PruneRule& rule,
                                         Position now, std::vector<IntervalSummary> instances) {
  SmoothHistogram sketch(params, rule);
  if (now < 0) throw ConfigError("snapshot position must be nonnegative");
  sketch.now_ = now;
  sketch.instances_ = std::move(instances);
  if (auto violation = sketch.check_invariants()) {
    throw ConfigError("inconsistent sketch snapshot: " + *violation);
  }
  return sketch;
}

void SmoothHistogram::update(Value x) {
  params_.check_value(x);
  ++now_;
  for (auto& inst : instances_) inst = summary_append(inst, x);
  instances_.push_back(summary_singleton(params_, x, now_));
  prune(instances_, rule_);
  expire(instances_, now_, params_.window);
}

Value SmoothHistogram::query() const noexcept {
  if (instances_.empty()) return 0;
  if (instances_.front().start > now_ - params_.window) return instances_.front().f;
  return instances_[1].f;
}

SketchSize SmoothHistogram::size() const noexcept {
  return {instances_.size(), instances_.size() * 3 * 64};
}

std::optional<std::string> SmoothHistogram::check_invariants() const {
  auto fail = [](std::size_t i, const std::string& what) {
    return std::optional<std::string>("instance " + std::to_string(i + 1) + ": " + what);
  };
  const std::size_t q = instances_.size();
  if (q == 0) {
    if (now_ != 0) return std::string("no instances after ") + std::to_string(now_) + " updates";
    return std::nullopt;
  }
  if (instances_.back().start != now_) return fail(q - 1, "last instance does not start at now");
  for (std::size_t i = 0; i < q; ++i) {
    const auto& s = instances_[i];
    if (s.start < 1) return fail(i, "start before the first stream position");
    if (s.suf < 0 || s.suf > s.f) return fail(i, "expected 0 <= suf <= f");
    if (s.f > (now_ - s.start + 1) * params_.value_bound) return fail(i, "f exceeds length*M");
    if (i == 0) continue;
    const auto& prev = instances_[i - 1];
    if (prev.start >= s.start) return fail(i, "starts not strictly increasing");
    if (prev.f < s.f) return fail(i, "f increases with start");
    if (prev.suf < s.suf) return fail(i, "suf increases with start");
  }
  const Position threshold = now_ - params_.window;
  const auto& first = instances_.front();
  if (first.start > threshold) {
    if (first.start != 1) return fail(0, "unexpired first instance is not the stream start");
  } else if (q < 2 || instances_[1].start <= threshold) {
    return fail(1, "second instance expired but was retained");
  }
  const auto& close = rule_.closeness();
  for (std::size_t i = 1; i + 1 < q; ++i) {
    const auto& left = instances_[i - 1];
    const auto& right = instances_[i + 1];
    const bool f_drop = close.strictly_below(right.f, left.f);
    const bool suf_drop = close.strictly_below(right.suf, left.suf);
    const bool ok = rule_.kind() == PruneRule::Kind::kRefined ? (f_drop || suf_drop) : f_drop;
    if (!ok) return fail(i, "internal instance violates the post-prune gap condition");
  }
  return std::nullopt;
}

std::string SmoothHistogram::describe() const {
  std::ostringstream os;
  os << to_string(rule_.kind()) << "(" << rule_.factor() << ") n=" << params_.window
     << " M=" << params_.value_bound << " now=" << now_ << " q=" << instances_.size() << " [";
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& s = instances_[i];
    os << (i ? " " : "") << "(" << s.start << "," << s.suf << "," << s.f << ")";
  }
  os << "]";
  return os.str();
}

std::int64_t geometric_levels(std::int64_t window, Value value_bound, double eps) {
  const double mass = static_cast<double>(window) * static_cast<double>(value_bound);
  return static_cast<std::int64_t>(std::ceil(std::log(mass + 1.0) / -std::log1p(-eps)));
}

std::int64_t instance_bound(std::int64_t window, Value value_bound, double eps) {
  return 4 * geometric_levels(window, value_bound, eps) + 8;
}

}  // namespace winsum
