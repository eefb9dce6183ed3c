#include "winsum/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>

#include <json.hpp>

namespace winsum::snapshot {

namespace {

using nlohmann::json;

class Writer {
 public:
  void magic(const char (&tag)[5]) { bytes_.insert(bytes_.end(), tag, tag + 4); }
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  void magic(const char (&tag)[5]) {
    need(4);
    if (std::memcmp(bytes_.data() + pos_, tag, 4) != 0) {
      throw ConfigError(std::string("snapshot magic mismatch, expected ") + tag);
    }
    pos_ += 4;
  }
  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes_[pos_++]} << (8 * i);
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  /// Element count that must fit in the remaining bytes at `width` each.
  std::size_t count(std::size_t width) {
    const std::uint64_t n = u64();
    if (n > (bytes_.size() - pos_) / width) throw ConfigError("snapshot count exceeds payload");
    return static_cast<std::size_t>(n);
  }
  void finish() const {
    if (pos_ != bytes_.size()) throw ConfigError("trailing bytes after snapshot");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ConfigError("truncated snapshot");
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

PruneRule make_rule(std::uint8_t kind, double factor) {
  switch (kind) {
    case 0: return PruneRule::standard(factor);
    case 1: return PruneRule::refined(factor);
    default: throw ConfigError("unknown prune rule kind " + std::to_string(kind));
  }
}

PruneRule make_rule(const std::string& kind, double factor) {
  if (kind == "standard") return PruneRule::standard(factor);
  if (kind == "refined") return PruneRule::refined(factor);
  throw ConfigError("unknown prune rule kind '" + kind + "'");
}

void write_sketch(Writer& w, const SmoothHistogram& s) {
  w.magic("WSH1");
  w.u8(static_cast<std::uint8_t>(s.rule().kind()));
  w.f64(s.rule().factor());
  w.i64(s.params().window);
  w.f64(s.params().eps);
  w.i64(s.params().value_bound);
  w.i64(s.now());
  w.u64(s.instances().size());
  for (const auto& inst : s.instances()) {
    w.i64(inst.start);
    w.i64(inst.suf);
    w.i64(inst.f);
  }
}

SmoothHistogram read_sketch(Reader& r) {
  r.magic("WSH1");
  const auto kind = r.u8();
  const double factor = r.f64();
  const auto window = r.i64();
  const double eps = r.f64();
  const auto bound = r.i64();
  const auto params = Params::make(window, eps, bound);
  const auto rule = make_rule(kind, factor);
  const auto now = r.i64();
  std::vector<IntervalSummary> instances(r.count(24));
  for (auto& inst : instances) {
    inst.start = r.i64();
    inst.suf = r.i64();
    inst.f = r.i64();
  }
  return SmoothHistogram::restore(params, rule, now, std::move(instances));
}

json sketch_json(const SmoothHistogram& s) {
  json instances = json::array();
  for (const auto& inst : s.instances()) instances.push_back({inst.start, inst.suf, inst.f});
  return {
      {"params", {{"n", s.params().window}, {"eps", s.params().eps}, {"M", s.params().value_bound}}},
      {"rule", {{"kind", to_string(s.rule().kind())}, {"factor", s.rule().factor()}}},
      {"now", s.now()},
      {"instances", std::move(instances)},
  };
}

SmoothHistogram sketch_from(const json& j) {
  const auto& p = j.at("params");
  const auto params =
      Params::make(p.at("n").get<std::int64_t>(), p.at("eps").get<double>(), p.at("M").get<Value>());
  const auto rule =
      make_rule(j.at("rule").at("kind").get<std::string>(), j.at("rule").at("factor").get<double>());
  std::vector<IntervalSummary> instances;
  for (const auto& row : j.at("instances")) {
    if (!row.is_array() || row.size() != 3) throw ConfigError("instance must be [start, suf, f]");
    instances.push_back({row[0].get<Position>(), row[1].get<Value>(), row[2].get<Value>()});
  }
  return SmoothHistogram::restore(params, rule, j.at("now").get<Position>(), std::move(instances));
}

template <class F>
auto parse_json(const std::string& text, F&& build) {
  try {
    return build(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed snapshot JSON: ") + e.what());
  }
}

}  // namespace

std::vector<std::uint8_t> to_bytes(const SmoothHistogram& sketch) {
  Writer w;
  write_sketch(w, sketch);
  return w.take();
}

std::vector<std::uint8_t> to_bytes(const NonemptySketch& sketch) {
  Writer w;
  w.magic("WNE1");
  write_sketch(w, sketch.sketch());
  w.i64(sketch.last_nonneg());
  const auto& tracker = sketch.tracker();
  w.u64(tracker.bucket_count());
  for (Value b : tracker.thresholds()) w.i64(b);
  for (Position p : tracker.last_seen()) w.i64(p);
  return w.take();
}

SmoothHistogram sketch_from_bytes(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  auto sketch = read_sketch(r);
  r.finish();
  return sketch;
}

NonemptySketch nonempty_from_bytes(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  r.magic("WNE1");
  auto sketch = read_sketch(r);
  const Position last_nonneg = r.i64();
  const std::size_t buckets = r.count(16);
  std::vector<Value> thresholds(buckets + 1);
  for (auto& b : thresholds) b = r.i64();
  std::vector<Position> last_seen(buckets);
  for (auto& p : last_seen) p = r.i64();
  r.finish();
  auto tracker = MinTracker::restore(sketch.params().value_bound, sketch.params().eps,
                                     std::move(thresholds), std::move(last_seen));
  return NonemptySketch::restore(std::move(sketch), std::move(tracker), last_nonneg);
}

std::string to_json(const SmoothHistogram& sketch) { return sketch_json(sketch).dump(); }

std::string to_json(const NonemptySketch& sketch) {
  json j = sketch_json(sketch.sketch());
  j["last_nonneg"] = sketch.last_nonneg();
  j["thresholds"] = std::vector<Value>(sketch.tracker().thresholds().begin(),
                                       sketch.tracker().thresholds().end());
  j["last_seen"] = std::vector<Position>(sketch.tracker().last_seen().begin(),
                                         sketch.tracker().last_seen().end());
  return j.dump();
}

SmoothHistogram sketch_from_json(const std::string& text) {
  return parse_json(text, [](const json& j) { return sketch_from(j); });
}

NonemptySketch nonempty_from_json(const std::string& text) {
  return parse_json(text, [](const json& j) {
    auto sketch = sketch_from(j);
    auto tracker = MinTracker::restore(sketch.params().value_bound, sketch.params().eps,
                                       j.at("thresholds").get<std::vector<Value>>(),
                                       j.at("last_seen").get<std::vector<Position>>());
    return NonemptySketch::restore(std::move(sketch), std::move(tracker),
                                   j.at("last_nonneg").get<Position>());
  });
}

}  // namespace winsum::snapshot
