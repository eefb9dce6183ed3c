#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "winsum/params.hpp"
#include "winsum/streamgen.hpp"

namespace winsum::harness {

enum class Algo { kRefined, kStandard, kEh, kNonempty };
enum class ReportFormat { kCsv, kJson };

Algo parse_algo(std::string_view name);
std::string to_string(Algo algo);

struct RunConfig {
  Algo algo = Algo::kRefined;
  Params params;
  double beta = 0.5;  // standard rule only
  streamgen::StreamSpec spec{streamgen::Uniform{-10, 10}};
  std::uint64_t seed = 1;
  std::size_t length = 1000;
  ReportFormat format = ReportFormat::kCsv;
  std::string out;  // empty: no file written
  bool check_invariants = false;

  /// Throws ConfigError (e.g. eh on a non-bit stream).
  void validate() const;
  /// Relative error the algorithm promises.
  [[nodiscard]] double guarantee() const;
};

struct StepRecord {
  Position t = 0;
  Value estimate = 0;
  Value exact = 0;
  double rel_err = 0.0;  // (exact - estimate) / exact, 0 when exact == 0
  std::size_t q = 0;     // instances, buckets, or instances + tracker buckets
  double max_rel_err = 0.0;
  bool in_envelope = true;
};

struct RunSummary {
  std::size_t steps = 0;
  double max_rel_err = 0.0;  // largest |rel_err|
  std::size_t max_q = 0;
  double mean_q = 0.0;
  double wall_seconds = 0.0;
  std::size_t violations = 0;
  std::string first_violation;
};

struct RunReport {
  std::vector<StepRecord> steps;
  RunSummary summary;
};

/// Raised by run_compare with check_invariants set, carrying a state dump.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Feeds the generated stream to the sketch and an exact oracle and records
/// one StepRecord per element.
RunReport run_compare(const RunConfig& config);

/// Same as run_compare on an explicit element sequence.
RunReport run_compare(const RunConfig& config, const std::vector<Value>& stream);

/// Independent runs on a small thread pool; results in input order.
std::vector<RunReport> run_grid(const std::vector<RunConfig>& configs, unsigned threads);

void write_csv(std::ostream& os, const RunReport& report);
void write_json(std::ostream& os, const RunConfig& config, const RunReport& report);
/// Writes to config.out in config.format when out is set.
void write_report(const RunConfig& config, const RunReport& report);

struct BenchRow {
  std::string mode;  // algorithm name, or "oracle" for per-step recomputation
  std::int64_t window = 0;
  std::size_t updates = 0;
  double ns_per_update = 0.0;
  double updates_per_sec = 0.0;
  std::size_t peak_q = 0;
};

/// Times the sketch alone for n, 2n, 4n, ... (`doublings` extra sizes), then
/// times the linear-scan oracle at the base n over at most `oracle_updates`.
std::vector<BenchRow> run_bench(const RunConfig& config, int doublings,
                                std::size_t oracle_updates);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_bench_json(std::ostream& os, const std::vector<BenchRow>& rows);

/// Shortest round-trip decimal for a double.
std::string format_real(double v);

}  // namespace winsum::harness
