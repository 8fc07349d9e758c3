#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jante/parallel.hpp"
#include "jante/process.hpp"
#include "jante/topology.hpp"
#include "jante/verification.hpp"

namespace jante {

enum class ExperimentKind { absorb_hist, rate_estimate, verify_suite, single_run };
enum class OutputFormat { csv, jsonl };

/// Declarative description of a Monte-Carlo experiment. The JSON form mirrors
/// these fields one-to-one.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::absorb_hist;
  /// "cycle:N", or "graph:PATH" naming an edge-list file.
  std::string topology = "cycle:6";
  DistributionSpec distribution = DistributionSpec::discrete(4);
  std::size_t runs = 1000;
  StopRule stop = UntilAbsorbed{};
  StepMode mode = StepMode::frozen;
  std::uint64_t seed = 1;
  std::size_t embedded_steps = 2000;  // rate_estimate
  double burn_in = 0.1;               // fraction of embedded points dropped
  std::size_t samples = 100'000;      // verify_suite base sample size
  std::optional<std::filesystem::path> output;
  OutputFormat format = OutputFormat::csv;

  /// Throws invalid_spec when runs == 0 or burn_in leaves < 10 points.
  void validate() const;
};

std::string to_string(ExperimentKind kind);
std::string to_string(OutputFormat format);
ExperimentKind parse_kind(const std::string& text);
OutputFormat parse_format(const std::string& text);

/// "max_steps=K", "until_absorbed[:cap]" or "d_below=EPS[:cap]".
std::string describe(const StopRule& stop);
StopRule parse_stop_rule(const std::string& text);

/// Accepts "uniform01", "discrete:M=4", "discrete:M=4,probs=p1:...:pM" and
/// "finite:v1,v2,...".
DistributionSpec parse_distribution(const std::string& text);

std::string to_json(const ExperimentSpec& spec, int indent = 2);
ExperimentSpec spec_from_json(const std::string& text);

/// FNV-1a of the canonical JSON with the output fields removed: two specs
/// describing the same computation hash alike wherever they are written.
std::string spec_hash(const ExperimentSpec& spec);

Topology resolve_topology(const std::string& descriptor);

struct AbsorbRow {
  std::size_t run_index = 0;
  std::optional<std::int64_t> absorb_value;  // empty when the step cap hit
  std::size_t absorb_time = 0;
};

struct RateRow {
  std::size_t run_index = 0;
  double rho_hat = 0.0;
  std::size_t n_embedded = 0;  // regression points after burn-in and truncation
  double r_squared = 0.0;
};

struct SingleRow {
  std::size_t run_index = 0;
  std::size_t steps = 0;
  std::string stop_reason;
  double final_d = 0.0;
  double final_h = 0.0;  // NaN unless a cycle with N >= 5 and a continuous law
};

struct Summary {
  std::size_t runs = 0;
  std::size_t completed = 0;  // absorbed / regressed runs
  double mean = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct RunReport {
  ExperimentKind kind = ExperimentKind::absorb_hist;
  std::uint64_t seed = 0;
  std::string spec_hash;
  std::vector<AbsorbRow> absorb_rows;
  std::vector<RateRow> rate_rows;
  std::vector<SingleRow> single_rows;
  std::optional<VerificationReport> verification;

  /// absorb_hist: counts for support values min..max (index 0 = min).
  std::vector<std::size_t> histogram;
  std::int64_t histogram_origin = 0;
  /// absorb_hist: absorption times. rate_estimate: rho_hat.
  Summary summary;
  double wall_seconds = 0.0;  // reported, never persisted

  bool passed() const { return !verification || verification->passed(); }
};

/// Aggregates recomputed from the per-run rows.
Summary summarize(std::vector<double> values, std::size_t runs);
std::vector<std::size_t> absorb_histogram(const std::vector<AbsorbRow>& rows,
                                          std::int64_t lo, std::int64_t hi);

/// Least-squares rate from a ln xi series: drops the first burn_in fraction,
/// truncates before xi < 1e-300, needs >= 10 remaining points
/// (insufficient_data otherwise).
RateRow estimate_rate(std::span<const double> log_xi, double burn_in);

RunReport run_absorb_hist(const ExperimentSpec& spec, Execution exec = Execution::parallel);
RunReport run_rate_estimate(const ExperimentSpec& spec, Execution exec = Execution::parallel);
RunReport run_verify_suite(const ExperimentSpec& spec, Execution exec = Execution::parallel,
                           DriftFormula drift = {});
RunReport run_single(const ExperimentSpec& spec, Execution exec = Execution::parallel);
RunReport run_experiment(const ExperimentSpec& spec, Execution exec = Execution::parallel);

void write_report(std::ostream& out, const RunReport& report, OutputFormat format);
/// Writes rows ordered by run index; io_failure names the path.
void persist(const RunReport& report, const std::filesystem::path& path, OutputFormat format);

}  // namespace jante
