#include <doctest.h>

#include <vector>

#include "winsum/oracle.hpp"
#include "winsum/streamgen.hpp"
#include "winsum/summary.hpp"

using namespace winsum;

TEST_SUITE("summary") {

TEST_CASE("singleton clamps nonpositive elements") {
  const auto p = Params::make(10, 0.1, 10);
  CHECK(summary_singleton(p, 5, 7) == IntervalSummary{7, 5, 5});
  CHECK(summary_singleton(p, -3, 1) == IntervalSummary{1, 0, 0});
  CHECK(summary_singleton(p, 0, 2) == IntervalSummary{2, 0, 0});
  CHECK_THROWS_AS(summary_singleton(p, 11, 1), ConfigError);
  CHECK_THROWS_AS(summary_singleton(p, -11, 1), ConfigError);
}

TEST_CASE("append follows the Kadane recurrence") {
  CHECK(summary_append({1, 3, 7}, -10) == IntervalSummary{1, 0, 7});
  CHECK(summary_append({1, 2, 2}, 3) == IntervalSummary{1, 5, 5});

  const auto p = Params::make(10, 0.1, 10);
  auto s = summary_singleton(p, 2, 1);
  s = summary_append(s, -1);
  s = summary_append(s, 3);
  CHECK(s == IntervalSummary{1, 4, 4});
}

TEST_CASE("kadane on fixed sequences") {
  CHECK(kadane_max_subarray({}) == 0);
  const std::vector<Value> neg{-2, -5};
  CHECK(kadane_max_subarray(neg) == 0);
  const std::vector<Value> mixed{2, -1, 3, -4, 2};
  CHECK(kadane_max_subarray(mixed) == 4);
  static_assert(summary_append({1, 0, 0}, 4).f == 4);
}

TEST_CASE("fold matches brute force for short sequences") {
  // Exhaustive up to length 6, then random sequences up to length 12, values in -3..3.
  auto check = [](const std::vector<Value>& seq) {
    IntervalSummary acc{};
    Value prev_f = 0;
    for (Value x : seq) {
      acc = summary_append(acc, x);
      REQUIRE(acc.suf >= 0);
      REQUIRE(acc.suf <= acc.f);
      REQUIRE(acc.f >= prev_f);
      prev_f = acc.f;
    }
    REQUIRE(acc.f == oracle::brute_mss(seq));
    REQUIRE(acc.suf == oracle::brute_suffix_max(seq));
    REQUIRE(kadane_max_subarray(seq) == acc.f);
  };

  std::vector<Value> seq;
  for (std::size_t len = 0; len <= 6; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 7;
    seq.assign(len, 0);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (auto& v : seq) {
        v = static_cast<Value>(c % 7) - 3;
        c /= 7;
      }
      check(seq);
    }
  }
  streamgen::SplitMix64 rng(2024);
  for (int trial = 0; trial < 20000; ++trial) {
    seq.resize(static_cast<std::size_t>(rng.uniform(7, 12)));
    for (auto& v : seq) v = rng.uniform(-3, 3);
    check(seq);
  }
}

TEST_CASE("params validation") {
  CHECK_NOTHROW(Params::make(1, 0.5, 1));
  CHECK_THROWS_AS(Params::make(0, 0.5, 1), ConfigError);
  CHECK_THROWS_AS(Params::make(10, 0.0, 1), ConfigError);
  CHECK_THROWS_AS(Params::make(10, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(Params::make(10, 0.5, 0), ConfigError);
  CHECK_NOTHROW(Params::make(std::int64_t{1} << 31, 0.5, std::int64_t{1} << 31));
  CHECK_THROWS_AS(Params::make(std::int64_t{1} << 32, 0.5, std::int64_t{1} << 31), ConfigError);
}

}
