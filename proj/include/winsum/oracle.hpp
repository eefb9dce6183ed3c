#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "winsum/params.hpp"

namespace winsum::oracle {

/// Exact copy of the last min(t, n) elements.
class WindowBuffer {
 public:
  explicit WindowBuffer(std::int64_t window);

  void push(Value x);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
  [[nodiscard]] Position now() const noexcept { return now_; }
  [[nodiscard]] std::int64_t window() const noexcept { return window_; }

  /// i-th element of the window, oldest first.
  [[nodiscard]] Value operator[](std::size_t i) const noexcept {
    return ring_[(head_ + i) % ring_.size()];
  }

  [[nodiscard]] std::vector<Value> contents() const;

 private:
  std::int64_t window_;
  std::vector<Value> ring_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  Position now_ = 0;
};

/// f(W): linear scan, empty subarray allowed.
Value mss(const WindowBuffer& buf);
/// Nonempty maximum; nullopt for an empty window.
std::optional<Value> mss_nonempty(const WindowBuffer& buf);
/// Suf(W) and Pre(W), clamped at 0.
Value suffix_max(const WindowBuffer& buf);
Value prefix_max(const WindowBuffer& buf);
/// Throws ConfigError if a non-bit element is present.
std::int64_t count_ones(const WindowBuffer& buf);

// Quadratic enumerations over every (i, j) pair; meant for short sequences.
Value brute_mss(std::span<const Value> seq);
std::optional<Value> brute_mss_nonempty(std::span<const Value> seq);
Value brute_suffix_max(std::span<const Value> seq);
Value brute_prefix_max(std::span<const Value> seq);

/// Exact window statistics in O(log n) per update: a segment tree over the
/// ring slots, combined in window order at query time.
class WindowTree {
 public:
  explicit WindowTree(std::int64_t window);

  void push(Value x);

  [[nodiscard]] Value mss() const noexcept;
  [[nodiscard]] std::optional<Value> mss_nonempty() const noexcept;
  [[nodiscard]] Value suffix_max() const noexcept;
  [[nodiscard]] Value prefix_max() const noexcept;
  [[nodiscard]] Value sum() const noexcept;
  [[nodiscard]] Position now() const noexcept { return now_; }

  /// Sums of nonempty prefixes/suffixes/subarrays; `empty` marks the identity.
  struct Node {
    bool empty = true;
    Value sum = 0;
    Value pre = 0;
    Value suf = 0;
    Value best = 0;
  };

 private:
  [[nodiscard]] Node range(std::size_t lo, std::size_t hi) const noexcept;
  [[nodiscard]] Node whole() const noexcept;

  std::int64_t window_;
  std::size_t leaves_;
  std::vector<Node> tree_;
  Position now_ = 0;
};

WindowTree::Node combine(const WindowTree::Node& left, const WindowTree::Node& right) noexcept;

}  // namespace winsum::oracle
