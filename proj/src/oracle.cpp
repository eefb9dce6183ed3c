#include "winsum/oracle.hpp"

#include <algorithm>
#include <bit>

namespace winsum::oracle {

WindowBuffer::WindowBuffer(std::int64_t window) : window_(window) {
  if (window < 1) throw ConfigError("window size must be >= 1");
  ring_.resize(static_cast<std::size_t>(window));
}

void WindowBuffer::push(Value x) {
  ++now_;
  if (size_ < ring_.size()) {
    ring_[(head_ + size_) % ring_.size()] = x;
    ++size_;
  } else {
    ring_[head_] = x;
    head_ = (head_ + 1) % ring_.size();
  }
}

std::vector<Value> WindowBuffer::contents() const {
  std::vector<Value> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

Value mss(const WindowBuffer& buf) {
  Value best = 0;
  Value ending_here = 0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    ending_here = std::max<Value>(ending_here + buf[i], 0);
    best = std::max(best, ending_here);
  }
  return best;
}

std::optional<Value> mss_nonempty(const WindowBuffer& buf) {
  if (buf.empty()) return std::nullopt;
  Value best = buf[0];
  Value ending_here = buf[0];
  for (std::size_t i = 1; i < buf.size(); ++i) {
    ending_here = std::max(ending_here + buf[i], buf[i]);
    best = std::max(best, ending_here);
  }
  return best;
}

Value suffix_max(const WindowBuffer& buf) {
  Value best = 0;
  Value running = 0;
  for (std::size_t i = buf.size(); i-- > 0;) {
    running += buf[i];
    best = std::max(best, running);
  }
  return best;
}

Value prefix_max(const WindowBuffer& buf) {
  Value best = 0;
  Value running = 0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    running += buf[i];
    best = std::max(best, running);
  }
  return best;
}

std::int64_t count_ones(const WindowBuffer& buf) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (buf[i] != 0 && buf[i] != 1) throw ConfigError("window holds a non-bit element");
    count += buf[i];
  }
  return count;
}

std::optional<Value> brute_mss_nonempty(std::span<const Value> seq) {
  std::optional<Value> best;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i; j < seq.size(); ++j) {
      Value sum = 0;
      for (std::size_t k = i; k <= j; ++k) sum += seq[k];
      if (!best || sum > *best) best = sum;
    }
  }
  return best;
}

Value brute_mss(std::span<const Value> seq) {
  return std::max<Value>(0, brute_mss_nonempty(seq).value_or(0));
}

Value brute_suffix_max(std::span<const Value> seq) {
  Value best = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Value sum = 0;
    for (std::size_t k = i; k < seq.size(); ++k) sum += seq[k];
    best = std::max(best, sum);
  }
  return best;
}

Value brute_prefix_max(std::span<const Value> seq) {
  Value best = 0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    Value sum = 0;
    for (std::size_t k = 0; k <= j; ++k) sum += seq[k];
    best = std::max(best, sum);
  }
  return best;
}

WindowTree::Node combine(const WindowTree::Node& left, const WindowTree::Node& right) noexcept {
  if (left.empty) return right;
  if (right.empty) return left;
  WindowTree::Node out;
  out.empty = false;
  out.sum = left.sum + right.sum;
  out.pre = std::max(left.pre, left.sum + right.pre);
  out.suf = std::max(right.suf, right.sum + left.suf);
  out.best = std::max({left.best, right.best, left.suf + right.pre});
  return out;
}

WindowTree::WindowTree(std::int64_t window) : window_(window) {
  if (window < 1) throw ConfigError("window size must be >= 1");
  leaves_ = std::bit_ceil(static_cast<std::size_t>(window));
  tree_.resize(2 * leaves_);
}

void WindowTree::push(Value x) {
  ++now_;
  std::size_t node = leaves_ + static_cast<std::size_t>((now_ - 1) % window_);
  tree_[node] = {false, x, x, x, x};
  for (node /= 2; node >= 1; node /= 2) tree_[node] = combine(tree_[2 * node], tree_[2 * node + 1]);
}

WindowTree::Node WindowTree::range(std::size_t lo, std::size_t hi) const noexcept {
  Node left_acc;
  Node right_acc;
  for (lo += leaves_, hi += leaves_; lo < hi; lo /= 2, hi /= 2) {
    if (lo & 1) left_acc = combine(left_acc, tree_[lo++]);
    if (hi & 1) right_acc = combine(tree_[--hi], right_acc);
  }
  return combine(left_acc, right_acc);
}

WindowTree::Node WindowTree::whole() const noexcept {
  const auto n = static_cast<std::size_t>(window_);
  if (now_ <= window_) return range(0, static_cast<std::size_t>(now_));
  // Slot of the oldest element in the window.
  const auto head = static_cast<std::size_t>(now_ % window_);
  return combine(range(head, n), range(0, head));
}

Value WindowTree::mss() const noexcept { return std::max<Value>(0, whole().best); }

std::optional<Value> WindowTree::mss_nonempty() const noexcept {
  const Node n = whole();
  if (n.empty) return std::nullopt;
  return n.best;
}

Value WindowTree::suffix_max() const noexcept { return std::max<Value>(0, whole().suf); }
Value WindowTree::prefix_max() const noexcept { return std::max<Value>(0, whole().pre); }
Value WindowTree::sum() const noexcept { return whole().sum; }

}  // namespace winsum::oracle
