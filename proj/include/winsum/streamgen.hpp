#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "winsum/params.hpp"

namespace winsum::streamgen {

/// SplitMix64. Fixed constants so every implementation reproduces the
/// same streams for the same seed.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi] by 128-bit multiply-high reduction.
  constexpr std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto scaled =
        static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * span) >> 64);
    return lo + static_cast<std::int64_t>(span == 0 ? next() : scaled);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

struct Uniform { Value lo; Value hi; };
struct Walk { Value step; };
struct Bursty { std::int64_t burst_len; Value burst_hi; std::int64_t gap_len; Value gap_lo; };
struct AllNegative { Value lo; Value hi; };
struct Bits { double p_one; };
struct Decay { Value peak; double ratio; };
struct File { std::string path; };

/// Parsed form of the stream mini-grammar, e.g. `uniform:-10..10`,
/// `bits:p=0.3`, `decay:peak=1000000,ratio=0.9` or `file:/tmp/x.txt`.
struct StreamSpec {
  std::variant<Uniform, Walk, Bursty, AllNegative, Bits, Decay, File> kind;

  /// Largest |value| the generator can emit (for file streams, the largest
  /// magnitude found in the file, at least 1).
  [[nodiscard]] Value value_bound() const;
  [[nodiscard]] bool is_bits() const noexcept { return std::holds_alternative<Bits>(kind); }
  [[nodiscard]] std::string to_string() const;
};

/// Throws ConfigError with the offending text on malformed specs.
StreamSpec parse(std::string_view text);

/// Deterministic stream of `length` values (file streams stop early when the
/// file is shorter). Throws ConfigError if a value exceeds `value_bound`.
std::vector<Value> generate(const StreamSpec& spec, std::uint64_t seed, std::size_t length,
                            Value value_bound);

/// Same as above with the spec's own bound.
std::vector<Value> generate(const StreamSpec& spec, std::uint64_t seed, std::size_t length);

/// One decimal integer per line; blank trailing line allowed. Errors carry
/// the 1-based line number.
std::vector<Value> read_file(const std::string& path);

}  // namespace winsum::streamgen
