// winsum: run sliding-window max-subarray sketches against an exact oracle.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "winsum/harness.hpp"
#include "winsum/nonempty.hpp"
#include "winsum/snapshot.hpp"
#include "winsum/streamgen.hpp"

namespace {

using namespace winsum;

struct Options {
  std::string algo = "refined";
  std::int64_t window = 100;
  double eps = 0.1;
  double beta = 0.5;
  Value value_bound = 0;  // 0: take from stream spec
  std::string stream = "uniform:-10..10";
  std::uint64_t seed = 1;
  std::size_t length = 1000;
  std::string report = "csv";
  std::string out;
  bool check = false;
  std::string snapshot;
  int doublings = 4;
  std::size_t oracle_updates = 0;
};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--algo", o.algo, "refined|standard|eh|nonempty")
      ->check(CLI::IsMember({"refined", "standard", "eh", "nonempty"}));
  cmd.add_option("--n", o.window, "Window size")->check(CLI::PositiveNumber);
  cmd.add_option("--eps", o.eps, "Relative error target in (0,1)");
  cmd.add_option("--beta", o.beta, "Standard-rule closeness in (0,1)");
  cmd.add_option("--M", o.value_bound, "Value bound (default: from the stream spec)");
  cmd.add_option("--stream", o.stream,
                 "uniform:-10..10 | bits:p=0.3 | allneg:-50..-1 | walk:step=3 | "
                 "bursty:len=20,hi=10,gap=30,lo=-10 | decay:peak=1000000,ratio=0.9 | file:<path>");
  cmd.add_option("--seed", o.seed, "PRNG seed");
  cmd.add_option("--len", o.length, "Stream length");
  cmd.add_option("--report", o.report, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--out", o.out, "Report path (default: stdout)");
}

harness::RunConfig to_config(const Options& o) {
  harness::RunConfig c;
  c.algo = harness::parse_algo(o.algo);
  c.spec = streamgen::parse(o.stream);
  const Value bound = o.value_bound > 0 ? o.value_bound : c.spec.value_bound();
  c.params = Params::make(o.window, o.eps, bound);
  c.beta = o.beta;
  c.seed = o.seed;
  c.length = o.length;
  c.format = o.report == "json" ? harness::ReportFormat::kJson : harness::ReportFormat::kCsv;
  c.out = o.out;
  c.check_invariants = o.check;
  c.validate();
  return c;
}

void write_snapshot(const harness::RunConfig& c, const std::string& path) {
  const auto stream = streamgen::generate(c.spec, c.seed, c.length, c.params.value_bound);
  const bool as_json = path.size() >= 5 && path.ends_with(".json");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open snapshot file '" + path + "'");
  auto emit = [&](const auto& sketch) {
    if (as_json) {
      os << snapshot::to_json(sketch) << '\n';
    } else {
      const auto bytes = snapshot::to_bytes(sketch);
      os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
  };
  if (c.algo == harness::Algo::kNonempty) {
    NonemptySketch sketch(c.params);
    for (Value x : stream) sketch.update(x);
    emit(sketch);
  } else if (c.algo == harness::Algo::kEh) {
    throw ConfigError("snapshots are available for refined, standard and nonempty sketches");
  } else {
    SmoothHistogram sketch(c.params, c.algo == harness::Algo::kRefined
                                         ? PruneRule::refined(c.params.eps)
                                         : PruneRule::standard(c.beta));
    for (Value x : stream) sketch.update(x);
    emit(sketch);
  }
}

int cmd_run(const Options& o) {
  const auto config = to_config(o);
  const auto report = harness::run_compare(config);
  if (config.out.empty()) {
    if (config.format == harness::ReportFormat::kCsv) {
      harness::write_csv(std::cout, report);
    } else {
      harness::write_json(std::cout, config, report);
    }
  } else {
    harness::write_report(config, report);
  }
  if (!o.snapshot.empty()) write_snapshot(config, o.snapshot);
  const auto& s = report.summary;
  std::cerr << "steps=" << s.steps << " max_rel_err=" << harness::format_real(s.max_rel_err)
            << " guarantee=" << harness::format_real(config.guarantee()) << " max_q=" << s.max_q
            << " mean_q=" << harness::format_real(s.mean_q) << " violations=" << s.violations << '\n';
  if (s.violations > 0) {
    std::cerr << "envelope violated: " << s.first_violation << '\n';
    return 1;
  }
  return 0;
}

int cmd_bench(const Options& o) {
  const auto config = to_config(o);
  const auto rows = harness::run_bench(config, o.doublings, o.oracle_updates);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open report file '" + o.out + "'");
    os = &file;
  }
  if (config.format == harness::ReportFormat::kJson) {
    harness::write_bench_json(*os, rows);
  } else {
    harness::write_bench_csv(*os, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window maximum subarray sum sketches"};
  app.require_subcommand(1);
  Options run_opts;
  Options bench_opts;

  auto* run = app.add_subcommand("run", "Compare a sketch with the exact oracle step by step");
  add_common(*run, run_opts);
  run->add_flag("--check", run_opts.check, "Verify sketch invariants after every update");
  run->add_option("--snapshot", run_opts.snapshot,
                  "Write the final sketch state (binary, or JSON if the path ends in .json)");

  auto* bench = app.add_subcommand("bench", "Measure update throughput over doubling window sizes");
  add_common(*bench, bench_opts);
  bench->add_option("--doublings", bench_opts.doublings, "Extra window sizes n*2^k")
      ->check(CLI::Range(0, 20));
  bench->add_option("--oracle-updates", bench_opts.oracle_updates,
                    "Also time per-step oracle recomputation over this many updates");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(run_opts);
    return cmd_bench(bench_opts);
  } catch (const harness::InvariantViolation& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
