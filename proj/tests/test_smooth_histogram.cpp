#include <doctest.h>

#include <cmath>
#include <vector>

#include "winsum/oracle.hpp"
#include "winsum/smooth_histogram.hpp"
#include "winsum/streamgen.hpp"

using namespace winsum;

namespace {

// Builds instances from (f, suf) pairs with consecutive starts.
std::vector<IntervalSummary> chain(std::initializer_list<std::pair<Value, Value>> f_suf) {
  std::vector<IntervalSummary> out;
  Position start = 1;
  for (auto [f, suf] : f_suf) out.push_back({start++, suf, f});
  return out;
}

std::vector<Position> starts(std::span<const IntervalSummary> xs) {
  std::vector<Position> out;
  for (const auto& x : xs) out.push_back(x.start);
  return out;
}

}  // namespace

TEST_SUITE("smooth_histogram") {

TEST_CASE("closeness is exact on decimal factors") {
  const Closeness c(0.1);
  CHECK(c.exact());
  CHECK(c.numerator() == 1);
  CHECK(c.denominator() == 10);
  CHECK(c.at_least(9, 10));
  CHECK_FALSE(c.at_least(8, 10));
  CHECK(c.at_least(0, 0));
  CHECK(Closeness(0.05).at_least(95, 100));
  CHECK_FALSE(Closeness(0.05).at_least(94, 100));
  CHECK(Closeness(0.02).denominator() == 50);
  CHECK(Closeness(0.25).within(1, 4));
  CHECK_FALSE(Closeness(0.25).within(-2, 7));
  CHECK_THROWS_AS(Closeness(0.0), ConfigError);
  CHECK_THROWS_AS(Closeness(1.5), ConfigError);
  // 0.7 is not 7/10 in binary, but its shortest decimal is.
  CHECK(Closeness(0.7).at_least(3, 10));
  CHECK_FALSE(Closeness(0.7).at_least(2, 10));
}

TEST_CASE("new sketch is empty") {
  SmoothHistogram a(Params::make(10, 0.1, 10), PruneRule::refined(0.1));
  CHECK(a.size() == SketchSize{0, 0});
  CHECK(a.now() == 0);
  CHECK(a.query() == 0);
  CHECK_FALSE(a.check_invariants());

  SmoothHistogram b(Params::make(1, 0.5, 10), PruneRule::refined(0.5));
  CHECK(b.size().instances == 0);

  CHECK(PruneRule::standard(0.99).guarantee() == doctest::Approx(1.0 / (2.0 - 0.99)));
  CHECK(PruneRule::standard(0.99).guarantee() == doctest::Approx(0.9901).epsilon(1e-4));
  CHECK(PruneRule::refined(0.2).guarantee() == doctest::Approx(0.2));
  CHECK_THROWS_AS(PruneRule::refined(0.0), ConfigError);
  CHECK_THROWS_AS(PruneRule::standard(1.0), ConfigError);
}

TEST_CASE("update examples") {
  SmoothHistogram s(Params::make(10, 0.5, 10), PruneRule::refined(0.5));
  s.update(4);
  REQUIRE(s.instances().size() == 1);
  CHECK(s.instances()[0] == IntervalSummary{1, 4, 4});

  SmoothHistogram two(Params::make(10, 0.5, 10), PruneRule::refined(0.5));
  two.update(1);
  two.update(1);
  REQUIRE(two.instances().size() == 2);
  CHECK(two.instances()[0] == IntervalSummary{1, 2, 2});
  CHECK(two.instances()[1] == IntervalSummary{2, 1, 1});

  SmoothHistogram ones(Params::make(10, 0.5, 1), PruneRule::refined(0.5));
  for (int t = 1; t <= 50; ++t) {
    ones.update(1);
    const Value truth = std::min(t, 10);
    REQUIRE(ones.query() <= truth);
    REQUIRE(2 * ones.query() >= truth);
  }
  CHECK_THROWS_AS(ones.update(2), ConfigError);
}

TEST_CASE("prune examples") {
  const auto rule = PruneRule::refined(0.1);
  auto a = chain({{10, 10}, {10, 10}, {9, 9}});
  prune(a, rule);
  CHECK(a.size() == 2);
  CHECK(starts(a) == std::vector<Position>{1, 3});

  auto b = chain({{10, 10}, {9, 1}, {8, 0}});
  prune(b, rule);
  CHECK(b.size() == 3);

  auto c = chain({{100, 100}, {99, 99}, {98, 2}, {97, 1}});
  prune(c, PruneRule::refined(0.05));
  CHECK(c.size() == 4);

  // Removal re-tests the same slot against its new right neighbour.
  auto d = chain({{10, 10}, {10, 10}, {10, 10}, {10, 10}, {10, 10}});
  prune(d, rule);
  CHECK(starts(d) == std::vector<Position>{1, 5});

  // Trailing zeros collapse through the tie rule.
  auto z = chain({{5, 0}, {0, 0}, {0, 0}, {0, 0}});
  prune(z, rule);
  CHECK(starts(z) == std::vector<Position>{1, 2, 4});

  // The standard rule ignores Suf.
  auto e = chain({{10, 10}, {9, 1}, {9, 0}});
  prune(e, PruneRule::standard(0.1));
  CHECK(starts(e) == std::vector<Position>{1, 3});
}

TEST_CASE("expire examples") {
  std::vector<IntervalSummary> a{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
  expire(a, 12, 10);
  CHECK(starts(a) == std::vector<Position>{2, 3});

  std::vector<IntervalSummary> b{{5, 0, 0}, {9, 0, 0}};
  expire(b, 12, 10);
  CHECK(starts(b) == std::vector<Position>{5, 9});

  std::vector<IntervalSummary> c;
  for (Position s = 1; s <= 12; ++s) c.push_back({s, 0, 0});
  expire(c, 12, 3);
  CHECK(starts(c) == std::vector<Position>{9, 10, 11, 12});
}

TEST_CASE("query examples") {
  SmoothHistogram s(Params::make(10, 0.3, 5), PruneRule::refined(0.3));
  for (int i = 0; i < 3; ++i) s.update(1);
  CHECK(s.query() == 3);

  SmoothHistogram neg(Params::make(4, 0.3, 5), PruneRule::refined(0.3));
  for (int i = 0; i < 20; ++i) {
    neg.update(-1 - i % 5);
    CHECK(neg.query() == 0);
  }
}

TEST_CASE("size reports three words per instance") {
  SmoothHistogram s(Params::make(100, 0.5, 10), PruneRule::refined(0.5));
  for (Value x : {5, -1, 3, -4, 2, 2, -7}) s.update(x);
  const auto size = s.size();
  CHECK(size.bits_estimate == size.instances * 192);
  CHECK(SketchSize{5, 5 * 3 * 64} == SketchSize{5, 960});
}

TEST_CASE("every instance equals the exact summary of its interval") {
  streamgen::SplitMix64 rng(17);
  for (double eps : {0.5, 0.2, 0.05}) {
    for (auto rule : {PruneRule::refined(eps), PruneRule::standard(eps)}) {
      const auto params = Params::make(rng.uniform(1, 24), eps, 8);
      SmoothHistogram s(params, rule);
      std::vector<Value> history;
      oracle::WindowBuffer window(params.window);
      for (int t = 0; t < 400; ++t) {
        const Value x = rng.uniform(-8, 8);
        history.push_back(x);
        window.push(x);
        s.update(x);
        REQUIRE_FALSE(s.check_invariants());
        for (const auto& inst : s.instances()) {
          const std::span<const Value> span(history.begin() + (inst.start - 1), history.end());
          REQUIRE(inst.f == oracle::brute_mss(span));
          REQUIRE(inst.suf == oracle::brute_suffix_max(span));
        }
        const Value exact = oracle::mss(window);
        const Value est = s.query();
        REQUIRE(est <= exact);
        if (rule.kind() == PruneRule::Kind::kRefined) {
          REQUIRE(rule.closeness().at_least(est, exact));
        } else {
          REQUIRE(static_cast<double>(est) >= (1.0 - rule.guarantee()) * static_cast<double>(exact) - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("removal keeps boundary-crossing sums within the factor") {
  // For A, a suffix B of A that is (1-eps)-close in both f and Suf, and any
  // extension C: f(B + C) >= (1 - eps) f(A + C).
  streamgen::SplitMix64 rng(23);
  int tested = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const double eps = trial % 2 ? 0.1 : 0.3;
    const Closeness close(eps);
    std::vector<Value> a(static_cast<std::size_t>(rng.uniform(1, 12)));
    for (auto& v : a) v = rng.uniform(-5, 5);
    const auto cut = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(a.size()) - 1));
    const std::span<const Value> b(a.begin() + static_cast<std::ptrdiff_t>(cut), a.end());
    if (!close.at_least(oracle::brute_mss(b), oracle::brute_mss(a)) ||
        !close.at_least(oracle::brute_suffix_max(b), oracle::brute_suffix_max(a))) {
      continue;
    }
    std::vector<Value> c(static_cast<std::size_t>(rng.uniform(0, 12)));
    for (auto& v : c) v = rng.uniform(-5, 5);
    auto ac = a;
    ac.insert(ac.end(), c.begin(), c.end());
    std::vector<Value> bc(b.begin(), b.end());
    bc.insert(bc.end(), c.begin(), c.end());
    REQUIRE(close.at_least(oracle::brute_mss(bc), oracle::brute_mss(ac)));
    ++tested;
  }
  CHECK(tested > 1000);
}

TEST_CASE("instance count stays within the level bound") {
  CHECK(geometric_levels(10000, 100, 0.1) ==
        static_cast<std::int64_t>(std::ceil(std::log(1e6 + 1) / -std::log(0.9))));
  const auto params = Params::make(10000, 0.1, 100);
  const auto bound = static_cast<std::size_t>(instance_bound(10000, 100, 0.1));
  SmoothHistogram s(params, PruneRule::refined(0.1));
  // Positive spike, then shrinking alternating runs.
  streamgen::SplitMix64 rng(8);
  std::size_t max_q = 0;
  for (int t = 0; t < 60000; ++t) {
    const Value x = t % 500 == 0 ? 100 : (t % 2 ? rng.uniform(1, 100) : -rng.uniform(1, 100));
    s.update(x);
    max_q = std::max(max_q, s.size().instances);
  }
  CHECK(max_q <= bound);
  CHECK_FALSE(s.check_invariants());
}

TEST_CASE("restore rejects inconsistent states") {
  const auto params = Params::make(10, 0.1, 10);
  const auto rule = PruneRule::refined(0.1);
  CHECK_NOTHROW(SmoothHistogram::restore(params, rule, 2, {{1, 2, 2}, {2, 1, 1}}));
  CHECK_THROWS_AS(SmoothHistogram::restore(params, rule, 2, {{1, 2, 2}}), ConfigError);
  CHECK_THROWS_AS(SmoothHistogram::restore(params, rule, 2, {{1, 1, 1}, {2, 2, 2}}), ConfigError);
  CHECK_THROWS_AS(SmoothHistogram::restore(params, rule, 2, {{1, 3, 2}, {2, 1, 1}}), ConfigError);
  CHECK_THROWS_AS(SmoothHistogram::restore(params, rule, 1, {}), ConfigError);
}

}
