#include "winsum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "winsum/exponential_histogram.hpp"
#include "winsum/nonempty.hpp"
#include "winsum/oracle.hpp"
#include "winsum/smooth_histogram.hpp"

namespace winsum::harness {

namespace {

using Clock = std::chrono::steady_clock;

// One-sided check est >= (1 - 1/(2-beta)) * exact, i.e.
// (2a - b) * est >= (a - b) * exact for beta = b/a.
bool standard_envelope(const Closeness& beta, Value estimate, Value exact) {
  if (estimate > exact) return false;
  if (beta.exact()) {
    const __int128 a = beta.denominator();
    const __int128 b = beta.numerator();
    return (2 * a - b) * estimate >= (a - b) * exact;
  }
  const long double keep = 1.0L - 1.0L / (2.0L - static_cast<long double>(beta.eps()));
  return static_cast<long double>(estimate) >= keep * static_cast<long double>(exact) * (1.0L + 1e-15L);
}

double relative_error(Value estimate, Value exact) {
  if (exact == 0) return 0.0;
  return static_cast<double>(exact - estimate) / static_cast<double>(exact);
}

struct Observation {
  Value estimate;
  Value exact;
  std::size_t q;
};

template <class Step>
RunReport drive(const RunConfig& config, const std::vector<Value>& stream, Step&& step) {
  RunReport report;
  report.steps.reserve(stream.size());
  const Closeness eps_close(config.params.eps);
  const Closeness beta_close(config.algo == Algo::kStandard ? config.beta : 0.5);
  double max_err = 0.0;
  double q_total = 0.0;
  const auto start = Clock::now();

  for (std::size_t i = 0; i < stream.size(); ++i) {
    const Observation obs = step(stream[i]);
    StepRecord rec;
    rec.t = static_cast<Position>(i + 1);
    rec.estimate = obs.estimate;
    rec.exact = obs.exact;
    rec.rel_err = relative_error(obs.estimate, obs.exact);
    rec.q = obs.q;
    switch (config.algo) {
      case Algo::kRefined:
        rec.in_envelope = obs.estimate <= obs.exact && eps_close.at_least(obs.estimate, obs.exact);
        break;
      case Algo::kStandard:
        rec.in_envelope = standard_envelope(beta_close, obs.estimate, obs.exact);
        break;
      case Algo::kEh:
      case Algo::kNonempty:
        rec.in_envelope = eps_close.within(obs.estimate - obs.exact, obs.exact);
        break;
    }
    max_err = std::max(max_err, std::abs(rec.rel_err));
    rec.max_rel_err = max_err;
    q_total += static_cast<double>(rec.q);
    auto& sum = report.summary;
    sum.max_q = std::max(sum.max_q, rec.q);
    if (!rec.in_envelope && sum.violations++ == 0) {
      sum.first_violation = "t=" + std::to_string(rec.t) + " estimate=" + std::to_string(rec.estimate) +
                            " exact=" + std::to_string(rec.exact);
    }
    report.steps.push_back(rec);
  }

  auto& sum = report.summary;
  sum.steps = stream.size();
  sum.max_rel_err = max_err;
  sum.mean_q = stream.empty() ? 0.0 : q_total / static_cast<double>(stream.size());
  sum.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

[[noreturn]] void violation(Position t, const std::string& what, const std::string& dump) {
  throw InvariantViolation("invariant violated at t=" + std::to_string(t) + ": " + what +
                           "\nstate: " + dump);
}

}  // namespace

Algo parse_algo(std::string_view name) {
  if (name == "refined") return Algo::kRefined;
  if (name == "standard") return Algo::kStandard;
  if (name == "eh") return Algo::kEh;
  if (name == "nonempty") return Algo::kNonempty;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::kRefined: return "refined";
    case Algo::kStandard: return "standard";
    case Algo::kEh: return "eh";
    case Algo::kNonempty: return "nonempty";
  }
  return "?";
}

void RunConfig::validate() const {
  params.validate();
  if (algo == Algo::kStandard && !(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("beta must lie in (0, 1)");
  }
  if (algo == Algo::kEh && !spec.is_bits()) {
    throw ConfigError("algo eh requires a bits:p=... stream");
  }
}

double RunConfig::guarantee() const {
  return algo == Algo::kStandard ? 1.0 / (2.0 - beta) : params.eps;
}

RunReport run_compare(const RunConfig& config) {
  config.validate();
  return run_compare(config, streamgen::generate(config.spec, config.seed, config.length,
                                                 config.params.value_bound));
}

RunReport run_compare(const RunConfig& config, const std::vector<Value>& stream) {
  config.validate();
  oracle::WindowTree truth(config.params.window);
  const bool check = config.check_invariants;

  switch (config.algo) {
    case Algo::kRefined:
    case Algo::kStandard: {
      const auto rule = config.algo == Algo::kRefined ? PruneRule::refined(config.params.eps)
                                                      : PruneRule::standard(config.beta);
      SmoothHistogram sketch(config.params, rule);
      return drive(config, stream, [&](Value x) {
        sketch.update(x);
        truth.push(x);
        if (check) {
          if (auto v = sketch.check_invariants()) violation(sketch.now(), *v, sketch.describe());
        }
        return Observation{sketch.query(), truth.mss(), sketch.size().instances};
      });
    }
    case Algo::kEh: {
      ExponentialHistogram eh(config.params.window, config.params.eps);
      return drive(config, stream, [&](Value x) {
        eh.update(x);
        truth.push(x);
        if (check) {
          if (auto v = eh.check_invariants()) {
            violation(eh.now(), *v, "buckets=" + std::to_string(eh.buckets().size()));
          }
        }
        return Observation{eh.query(), truth.sum(), eh.buckets().size()};
      });
    }
    case Algo::kNonempty: {
      NonemptySketch sketch(config.params);
      return drive(config, stream, [&](Value x) {
        sketch.update(x);
        truth.push(x);
        const Value exact = *truth.mss_nonempty();
        if (check) {
          if (auto v = sketch.check_invariants()) {
            violation(sketch.now(), *v, sketch.sketch().describe());
          }
          if (sketch.nonnegative_regime() != (exact >= 0)) {
            violation(sketch.now(), "regime disagrees with the sign of the exact answer",
                      sketch.sketch().describe());
          }
        }
        return Observation{*sketch.query(), exact, sketch.footprint()};
      });
    }
  }
  throw ConfigError("unhandled algorithm");
}

std::vector<RunReport> run_grid(const std::vector<RunConfig>& configs, unsigned threads) {
  std::vector<RunReport> out(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        out[i] = run_compare(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const RunReport& report) {
  os << "t,estimate,exact,rel_err,q\n";
  for (const auto& r : report.steps) {
    os << r.t << ',' << r.estimate << ',' << r.exact << ',' << format_real(r.rel_err) << ',' << r.q
       << '\n';
  }
}

void write_json(std::ostream& os, const RunConfig& config, const RunReport& report) {
  using nlohmann::json;
  json steps = json::array();
  for (const auto& r : report.steps) {
    steps.push_back({{"t", r.t}, {"estimate", r.estimate}, {"exact", r.exact},
                     {"rel_err", r.rel_err}, {"q", r.q}});
  }
  const auto& s = report.summary;
  json doc = {
      {"config",
       {{"algo", to_string(config.algo)}, {"n", config.params.window}, {"eps", config.params.eps},
        {"M", config.params.value_bound}, {"beta", config.beta}, {"stream", config.spec.to_string()},
        {"seed", config.seed}, {"len", config.length}}},
      {"steps", std::move(steps)},
      {"summary",
       {{"steps", s.steps}, {"max_rel_err", s.max_rel_err}, {"max_q", s.max_q}, {"mean_q", s.mean_q},
        {"wall_seconds", s.wall_seconds}, {"violations", s.violations},
        {"first_violation", s.first_violation}, {"guarantee", config.guarantee()}}},
  };
  os << doc.dump(2) << '\n';
}

void write_report(const RunConfig& config, const RunReport& report) {
  if (config.out.empty()) return;
  std::ofstream os(config.out, std::ios::binary);
  if (!os) throw ConfigError("cannot open report file '" + config.out + "'");
  if (config.format == ReportFormat::kCsv) {
    write_csv(os, report);
  } else {
    write_json(os, config, report);
  }
}

std::vector<BenchRow> run_bench(const RunConfig& config, int doublings,
                                std::size_t oracle_updates) {
  config.validate();
  std::vector<BenchRow> rows;
  const auto stream_for = [&](std::size_t length) {
    return streamgen::generate(config.spec, config.seed, length, config.params.value_bound);
  };

  for (int d = 0; d <= doublings; ++d) {
    RunConfig cfg = config;
    cfg.params = Params::make(config.params.window << d, config.params.eps, config.params.value_bound);
    const auto stream = stream_for(std::max(config.length, static_cast<std::size_t>(4 * cfg.params.window)));
    BenchRow row{to_string(cfg.algo), cfg.params.window, stream.size()};
    const auto start = Clock::now();
    switch (cfg.algo) {
      case Algo::kRefined:
      case Algo::kStandard: {
        SmoothHistogram sketch(cfg.params, cfg.algo == Algo::kRefined
                                               ? PruneRule::refined(cfg.params.eps)
                                               : PruneRule::standard(cfg.beta));
        for (Value x : stream) {
          sketch.update(x);
          row.peak_q = std::max(row.peak_q, sketch.size().instances);
        }
        break;
      }
      case Algo::kEh: {
        ExponentialHistogram eh(cfg.params.window, cfg.params.eps);
        for (Value x : stream) {
          eh.update(x);
          row.peak_q = std::max(row.peak_q, eh.buckets().size());
        }
        break;
      }
      case Algo::kNonempty: {
        NonemptySketch sketch(cfg.params);
        for (Value x : stream) {
          sketch.update(x);
          row.peak_q = std::max(row.peak_q, sketch.footprint());
        }
        break;
      }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    row.ns_per_update = secs * 1e9 / static_cast<double>(stream.size());
    row.updates_per_sec = static_cast<double>(stream.size()) / std::max(secs, 1e-12);
    rows.push_back(row);
  }

  if (oracle_updates > 0) {
    // Fill the window untimed so every timed step scans n elements.
    const auto window = static_cast<std::size_t>(config.params.window);
    const auto stream = stream_for(window + oracle_updates);
    oracle::WindowBuffer buf(config.params.window);
    for (std::size_t i = 0; i < window; ++i) buf.push(stream[i]);
    BenchRow row{"oracle", config.params.window, oracle_updates};
    Value sink = 0;
    const auto start = Clock::now();
    for (std::size_t i = window; i < stream.size(); ++i) {
      buf.push(stream[i]);
      sink ^= oracle::mss(buf);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    row.ns_per_update = secs * 1e9 / static_cast<double>(oracle_updates);
    row.updates_per_sec = static_cast<double>(oracle_updates) / std::max(secs, 1e-12);
    row.peak_q = buf.size();
    volatile Value keep_alive = sink;
    (void)keep_alive;
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "mode,n,updates,ns_per_update,updates_per_sec,peak_q\n";
  for (const auto& r : rows) {
    os << r.mode << ',' << r.window << ',' << r.updates << ',' << format_real(r.ns_per_update) << ','
       << format_real(r.updates_per_sec) << ',' << r.peak_q << '\n';
  }
}

void write_bench_json(std::ostream& os, const std::vector<BenchRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"mode", r.mode}, {"n", r.window}, {"updates", r.updates},
                   {"ns_per_update", r.ns_per_update}, {"updates_per_sec", r.updates_per_sec},
                   {"peak_q", r.peak_q}});
  }
  os << doc.dump(2) << '\n';
}

}  // namespace winsum::harness
