#include "winsum/exponential_histogram.hpp"

#include <cmath>

namespace winsum {

ExponentialHistogram::ExponentialHistogram(std::int64_t window, double eps) : window_(window) {
  if (window < 1) throw ConfigError("window size must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  k_ = static_cast<std::int64_t>(std::ceil(1.0 / eps));
}

ExponentialHistogram ExponentialHistogram::with_k(std::int64_t window, std::int64_t k) {
  if (window < 1) throw ConfigError("window size must be >= 1");
  if (k < 1) throw ConfigError("k must be >= 1");
  return ExponentialHistogram(window, k, true);
}

void ExponentialHistogram::update(Value bit) {
  if (bit != 0 && bit != 1) {
    throw ConfigError("exponential histogram accepts only 0/1, got " + std::to_string(bit));
  }
  ++now_;
  if (bit == 1) {
    buckets_.push_back({1, now_});
    ++total_;
    cascade();
  }
  while (!buckets_.empty() && buckets_.front().newest <= now_ - window_) {
    total_ -= buckets_.front().size;
    buckets_.pop_front();
  }
}

void ExponentialHistogram::cascade() {
  // Sizes are nonincreasing from oldest to newest, so the buckets of one
  // size form a contiguous run ending at `end`.
  std::size_t end = buckets_.size();
  std::int64_t size = 1;
  while (end > 0) {
    std::size_t begin = end;
    while (begin > 0 && buckets_[begin - 1].size == size) --begin;
    if (static_cast<std::int64_t>(end - begin) <= k_ + 1) return;
    // Merge the two oldest of this size; the merged bucket keeps the later timestamp.
    buckets_[begin + 1] = {2 * size, buckets_[begin + 1].newest};
    buckets_.erase(buckets_.begin() + static_cast<std::ptrdiff_t>(begin));
    end = begin + 1;
    size *= 2;
  }
}

std::int64_t ExponentialHistogram::query() const noexcept {
  if (buckets_.empty()) return 0;
  return total_ - buckets_.front().size / 2;
}

std::optional<std::string> ExponentialHistogram::check_invariants() const {
  std::int64_t run = 0;
  std::int64_t run_size = 0;
  Position last = 0;
  for (std::size_t i = buckets_.size(); i-- > 0;) {
    const auto& b = buckets_[i];
    if (b.size < 1 || (b.size & (b.size - 1)) != 0) return std::string("bucket size not a power of two");
    if (b.size < run_size) return std::string("bucket sizes not nondecreasing from new to old");
    if (last != 0 && b.newest >= last) return std::string("timestamps not increasing");
    if (b.newest <= now_ - window_) return std::string("expired bucket retained");
    last = b.newest;
    run = b.size == run_size ? run + 1 : 1;
    run_size = b.size;
    if (run > k_ + 1) return std::string("per-size bucket cap exceeded");
  }
  return std::nullopt;
}

}  // namespace winsum
