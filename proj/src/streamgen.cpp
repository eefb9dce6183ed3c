#include "winsum/streamgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace winsum::streamgen {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void bad_spec(std::string_view text, const std::string& why) {
  throw ConfigError("bad stream spec '" + std::string(text) + "': " + why);
}

Value parse_int(std::string_view text, std::string_view whole) {
  Value v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    bad_spec(whole, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view text, std::string_view whole) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    bad_spec(whole, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

// "lo..hi"
std::pair<Value, Value> parse_range(std::string_view body, std::string_view whole) {
  const auto dots = body.find("..");
  if (dots == std::string_view::npos) bad_spec(whole, "expected lo..hi");
  const Value lo = parse_int(body.substr(0, dots), whole);
  const Value hi = parse_int(body.substr(dots + 2), whole);
  if (lo > hi) bad_spec(whole, "empty range");
  return {lo, hi};
}

// "a=1,b=2"
std::map<std::string, std::string, std::less<>> parse_fields(std::string_view body,
                                                             std::string_view whole) {
  std::map<std::string, std::string, std::less<>> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad_spec(whole, "expected key=value");
    out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
  }
  return out;
}

std::string_view field(const std::map<std::string, std::string, std::less<>>& fields,
                       std::string_view key, std::string_view whole) {
  const auto it = fields.find(key);
  if (it == fields.end()) bad_spec(whole, "missing field '" + std::string(key) + "'");
  return it->second;
}

std::string real_to_string(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Value file_bound(const std::string& path) {
  Value bound = 1;
  for (Value v : read_file(path)) bound = std::max(bound, v < 0 ? -v : v);
  return bound;
}

}  // namespace

Value StreamSpec::value_bound() const {
  return std::visit(
      overloaded{
          [](const Uniform& u) { return std::max({Value{1}, u.lo < 0 ? -u.lo : u.lo, u.hi < 0 ? -u.hi : u.hi}); },
          [](const Walk& w) { return 10 * w.step; },
          [](const Bursty& b) { return std::max(b.burst_hi, -b.gap_lo); },
          [](const AllNegative& a) { return -a.lo; },
          [](const Bits&) { return Value{1}; },
          [](const Decay& d) { return d.peak; },
          [](const File& f) { return file_bound(f.path); },
      },
      kind);
}

std::string StreamSpec::to_string() const {
  return std::visit(
      overloaded{
          [](const Uniform& u) { return "uniform:" + std::to_string(u.lo) + ".." + std::to_string(u.hi); },
          [](const Walk& w) { return "walk:step=" + std::to_string(w.step); },
          [](const Bursty& b) {
            return "bursty:len=" + std::to_string(b.burst_len) + ",hi=" + std::to_string(b.burst_hi) +
                   ",gap=" + std::to_string(b.gap_len) + ",lo=" + std::to_string(b.gap_lo);
          },
          [](const AllNegative& a) { return "allneg:" + std::to_string(a.lo) + ".." + std::to_string(a.hi); },
          [](const Bits& b) { return "bits:p=" + real_to_string(b.p_one); },
          [](const Decay& d) {
            return "decay:peak=" + std::to_string(d.peak) + ",ratio=" + real_to_string(d.ratio);
          },
          [](const File& f) { return "file:" + f.path; },
      },
      kind);
}

StreamSpec parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad_spec(text, "expected kind:arguments");
  const auto kind = text.substr(0, colon);
  const auto body = text.substr(colon + 1);

  if (kind == "uniform") {
    const auto [lo, hi] = parse_range(body, text);
    return {Uniform{lo, hi}};
  }
  if (kind == "allneg") {
    const auto [lo, hi] = parse_range(body, text);
    if (hi >= 0) bad_spec(text, "allneg range must be strictly negative");
    return {AllNegative{lo, hi}};
  }
  if (kind == "file") {
    if (body.empty()) bad_spec(text, "missing path");
    return {File{std::string(body)}};
  }
  const auto fields = parse_fields(body, text);
  if (kind == "walk") {
    const Value step = parse_int(field(fields, "step", text), text);
    if (step < 1) bad_spec(text, "step must be >= 1");
    return {Walk{step}};
  }
  if (kind == "bits") {
    const double p = parse_real(field(fields, "p", text), text);
    if (!(p >= 0.0 && p <= 1.0)) bad_spec(text, "p must lie in [0, 1]");
    return {Bits{p}};
  }
  if (kind == "decay") {
    const Value peak = parse_int(field(fields, "peak", text), text);
    const double ratio = parse_real(field(fields, "ratio", text), text);
    if (peak < 1) bad_spec(text, "peak must be >= 1");
    if (!(ratio > 0.0 && ratio < 1.0)) bad_spec(text, "ratio must lie in (0, 1)");
    return {Decay{peak, ratio}};
  }
  if (kind == "bursty") {
    Bursty b{parse_int(field(fields, "len", text), text), parse_int(field(fields, "hi", text), text),
             parse_int(field(fields, "gap", text), text), parse_int(field(fields, "lo", text), text)};
    if (b.burst_len < 1 || b.gap_len < 0) bad_spec(text, "burst/gap lengths out of range");
    if (b.burst_hi < 1 || b.gap_lo > -1) bad_spec(text, "need hi >= 1 and lo <= -1");
    return {b};
  }
  bad_spec(text, "unknown kind '" + std::string(kind) + "'");
}

std::vector<Value> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stream file '" + path + "'");
  std::vector<Value> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Value v = 0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (line.empty() || res.ec != std::errc{} || res.ptr != line.data() + line.size()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": not a decimal integer: '" + line + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Value> generate(const StreamSpec& spec, std::uint64_t seed, std::size_t length,
                            Value value_bound) {
  SplitMix64 rng(seed);
  std::vector<Value> out;
  out.reserve(std::holds_alternative<File>(spec.kind) ? 0 : length);

  std::visit(
      overloaded{
          [&](const Uniform& u) {
            for (std::size_t i = 0; i < length; ++i) out.push_back(rng.uniform(u.lo, u.hi));
          },
          [&](const Walk& w) {
            const Value limit = 10 * w.step;
            Value x = 0;
            for (std::size_t i = 0; i < length; ++i) {
              x = std::clamp(x + rng.uniform(-w.step, w.step), -limit, limit);
              out.push_back(x);
            }
          },
          [&](const Bursty& b) {
            const std::int64_t period = b.burst_len + b.gap_len;
            for (std::size_t i = 0; i < length; ++i) {
              const bool in_burst = static_cast<std::int64_t>(i) % period < b.burst_len;
              out.push_back(in_burst ? rng.uniform(1, b.burst_hi) : rng.uniform(b.gap_lo, -1));
            }
          },
          [&](const AllNegative& a) {
            for (std::size_t i = 0; i < length; ++i) out.push_back(rng.uniform(a.lo, a.hi));
          },
          [&](const Bits& b) {
            for (std::size_t i = 0; i < length; ++i) out.push_back(rng.unit() < b.p_one ? 1 : 0);
          },
          [&](const Decay& d) {
            // Cycles of +v_k, -floor(v_k / 2) with v_k = floor(peak * ratio^k), restarting
            // once v_k drops below 1. The seed only rotates the starting phase.
            std::vector<Value> cycle;
            for (double v = static_cast<double>(d.peak); v >= 1.0; v *= d.ratio) {
              const auto level = static_cast<Value>(v);
              cycle.push_back(level);
              cycle.push_back(-(level / 2));
            }
            const auto phase = static_cast<std::size_t>(rng.next() % cycle.size());
            for (std::size_t i = 0; i < length; ++i) out.push_back(cycle[(phase + i) % cycle.size()]);
          },
          [&](const File& f) {
            auto values = read_file(f.path);
            if (values.size() > length) values.resize(length);
            out = std::move(values);
          },
      },
      spec.kind);

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] > value_bound || out[i] < -value_bound) {
      throw ConfigError("stream value " + std::to_string(out[i]) + " at index " +
                        std::to_string(i + 1) + " exceeds bound " + std::to_string(value_bound));
    }
  }
  return out;
}

std::vector<Value> generate(const StreamSpec& spec, std::uint64_t seed, std::size_t length) {
  return generate(spec, seed, length, spec.value_bound());
}

}  // namespace winsum::streamgen
