#include <doctest.h>

#include <vector>

#include "winsum/oracle.hpp"
#include "winsum/streamgen.hpp"

using namespace winsum;
using namespace winsum::oracle;

namespace {

WindowBuffer buffer_of(std::int64_t n, std::initializer_list<Value> values) {
  WindowBuffer buf(n);
  for (Value v : values) buf.push(v);
  return buf;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("window buffer keeps the last n elements") {
  CHECK(buffer_of(2, {1, 2, 3}).contents() == std::vector<Value>{2, 3});
  CHECK(buffer_of(3, {1}).contents() == std::vector<Value>{1});
  CHECK(buffer_of(1, {5, -5}).contents() == std::vector<Value>{-5});
  CHECK(buffer_of(3, {1, 2, 3, 4, 5, 6, 7}).contents() == std::vector<Value>{5, 6, 7});
}

TEST_CASE("statistics on fixed windows") {
  CHECK(mss(WindowBuffer(4)) == 0);
  CHECK(mss(buffer_of(4, {-1, -1})) == 0);
  CHECK(mss(buffer_of(4, {2, -1, 3})) == 4);

  CHECK(mss_nonempty(buffer_of(4, {-2, -5, -1})) == -1);
  CHECK(mss_nonempty(buffer_of(4, {0, -3})) == 0);
  CHECK(mss_nonempty(buffer_of(4, {2, -1, 3})) == 4);
  CHECK_FALSE(mss_nonempty(WindowBuffer(4)).has_value());

  CHECK(suffix_max(buffer_of(4, {2, -1})) == 1);
  CHECK(prefix_max(buffer_of(4, {3})) == 3);
  CHECK(suffix_max(buffer_of(4, {-5})) == 0);

  CHECK(count_ones(buffer_of(4, {1, 0, 1})) == 2);
  CHECK(count_ones(WindowBuffer(4)) == 0);
  WindowBuffer ones(10);
  for (int i = 0; i < 50; ++i) ones.push(1);
  CHECK(count_ones(ones) == 10);
  CHECK_THROWS_AS(count_ones(buffer_of(4, {1, 2})), ConfigError);
}

TEST_CASE("linear scans agree with quadratic enumeration") {
  streamgen::SplitMix64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = rng.uniform(1, 64);
    WindowBuffer buf(n);
    const auto len = rng.uniform(0, 3 * n);
    for (std::int64_t i = 0; i < len; ++i) buf.push(rng.uniform(-6, 6));
    const auto w = buf.contents();
    REQUIRE(mss(buf) == brute_mss(w));
    REQUIRE(mss_nonempty(buf) == brute_mss_nonempty(w));
    REQUIRE(suffix_max(buf) == brute_suffix_max(w));
    REQUIRE(prefix_max(buf) == brute_prefix_max(w));
    if (!buf.empty()) REQUIRE(mss(buf) == std::max<Value>(0, *mss_nonempty(buf)));
  }
}

TEST_CASE("window tree tracks the buffer at every step") {
  streamgen::SplitMix64 rng(5);
  for (std::int64_t n : {1, 2, 3, 7, 16, 33}) {
    WindowBuffer buf(n);
    WindowTree tree(n);
    CHECK(tree.mss() == 0);
    CHECK_FALSE(tree.mss_nonempty().has_value());
    for (int t = 0; t < 200; ++t) {
      const Value x = rng.uniform(-9, 9);
      buf.push(x);
      tree.push(x);
      REQUIRE(tree.mss() == mss(buf));
      REQUIRE(tree.mss_nonempty() == mss_nonempty(buf));
      REQUIRE(tree.suffix_max() == suffix_max(buf));
      REQUIRE(tree.prefix_max() == prefix_max(buf));
    }
  }
}

TEST_CASE("boundary decomposition holds for every split") {
  streamgen::SplitMix64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Value> seq(static_cast<std::size_t>(rng.uniform(0, 12)));
    for (auto& v : seq) v = rng.uniform(-4, 4);
    const std::span<const Value> all(seq);
    for (std::size_t cut = 0; cut <= seq.size(); ++cut) {
      const auto a = all.first(cut);
      const auto c = all.subspan(cut);
      const Value expected =
          std::max({brute_mss(a), brute_mss(c), brute_suffix_max(a) + brute_prefix_max(c)});
      REQUIRE(brute_mss(all) == expected);
    }
  }
}

TEST_CASE("on bit windows the maximum subarray sum is the count of ones") {
  streamgen::SplitMix64 rng(3);
  WindowBuffer buf(25);
  for (int t = 0; t < 500; ++t) {
    buf.push(rng.unit() < 0.4 ? 1 : 0);
    REQUIRE(mss(buf) == count_ones(buf));
  }
}

}
