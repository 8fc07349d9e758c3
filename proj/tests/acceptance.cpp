// Acceptance run: one [PASS]/[FAIL] line per criterion. With --criterion k
// only criterion k runs. Exit status is 0 iff every selected criterion passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jante/experiments.hpp"
#include "jante/io.hpp"
#include "jante/stats.hpp"
#include "jante/verification.hpp"

using namespace jante;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::size_t kVerifySamples = 1'000'000;

struct Verdict {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) { return format_double(v); }

Verdict from_check(const CheckResult& c) {
  return {c.passed, c.name + ": " + std::to_string(c.samples) + " samples, " + std::to_string(c.violations) +
                        " violations; " + c.detail};
}

Verdict all_of(std::initializer_list<CheckResult> checks) {
  Verdict v{true, ""};
  for (const auto& c : checks) {
    const auto part = from_check(c);
    v.passed = v.passed && part.passed;
    v.detail += (v.detail.empty() ? "" : " | ") + part.detail;
  }
  return v;
}

ExperimentSpec absorb_spec(std::size_t n, std::int64_t m, std::size_t runs) {
  ExperimentSpec s;
  s.kind = ExperimentKind::absorb_hist;
  s.topology = "cycle:" + std::to_string(n);
  s.distribution = DistributionSpec::discrete(m);
  s.runs = runs;
  s.seed = kSeed;
  return s;
}

Verdict c1() {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  for (auto [n, m] : {std::pair<std::size_t, std::int64_t>{6, 4}, {10, 6}, {20, 10}}) {
    const auto r = run_experiment(absorb_spec(n, m, 1000));
    v.passed = v.passed && r.summary.completed == 1000;
    v.detail += "(" + std::to_string(n) + "," + std::to_string(m) + "): " + std::to_string(r.summary.completed) +
                "/1000 absorbed, mean time " + fmt(r.summary.mean) + "; ";
  }
  const double t = seconds_since(start);
  v.passed = v.passed && t < 60.0;
  v.detail += "runtime " + fmt(t) + " s (< 60)";
  return v;
}

Verdict c2() {
  const auto a = check_f_zero_iff_d_zero(5, 3);
  const auto b = check_f_zero_iff_d_zero(6, 2);
  auto v = all_of({a, b});
  v.passed = v.passed && a.samples + b.samples == 307;
  return v;
}

Verdict c3() {
  const auto start = std::chrono::steady_clock::now();
  auto v = from_check(check_f_decrease_sweep(1'000'000, check_seed(kSeed, 1), Execution::parallel));
  const double t = seconds_since(start);
  v.passed = v.passed && t < 30.0;
  v.detail += "; runtime " + fmt(t) + " s (< 30)";
  return v;
}

Verdict c4() { return from_check(check_absorbing_paths(10'000, 8, 5, check_seed(kSeed, 2), Execution::parallel)); }

Verdict c5() { return from_check(check_stable_family(10'000, check_seed(kSeed, 3))); }

Verdict c6() { return from_check(check_counterexample_graph(10'000, check_seed(kSeed, 4))); }

Verdict c7() {
  const auto start = std::chrono::steady_clock::now();
  auto v = all_of({check_drift_sign(1'000'000, check_seed(kSeed, 5), Execution::parallel),
                   check_drift_monte_carlo(1000, 10'000, check_seed(kSeed, 6), Execution::parallel)});
  const double t = seconds_since(start);
  v.passed = v.passed && t < 120.0;
  v.detail += "; runtime " + fmt(t) + " s (< 120)";
  return v;
}

Verdict c8() {
  const std::size_t sizes[] = {5, 8, 12};
  return from_check(check_embedded_step_bounds(sizes, 100'000, check_seed(kSeed, 10), Execution::parallel));
}

Verdict c9() { return from_check(check_decrease_probability(5, 100'000, check_seed(kSeed, 11), Execution::parallel)); }

Verdict c10() { return from_check(check_metric_bounds_sweep(1'000'000, check_seed(kSeed, 7), Execution::parallel)); }

Verdict c11() {
  struct Target {
    std::size_t n;
    double lo;
    double hi;
  };
  const Target targets[] = {{5, 0.47, 0.77}, {10, 0.14, 0.23}, {20, 0.02, 0.03}, {40, 0.003, 0.006}};
  const auto start = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  std::vector<double> log_n, log_mean;
  for (const auto& t : targets) {
    ExperimentSpec s;
    s.kind = ExperimentKind::rate_estimate;
    s.topology = "cycle:" + std::to_string(t.n);
    s.distribution = DistributionSpec::uniform01();
    s.runs = 200;
    s.seed = kSeed;
    const auto r = run_experiment(s);
    const bool all_negative = std::all_of(r.rate_rows.begin(), r.rate_rows.end(),
                                          [](const RateRow& row) { return row.rho_hat > 0.0; });
    const bool median_inside = r.summary.median > t.lo && r.summary.median < t.hi;
    v.passed = v.passed && all_negative && median_inside;
    v.detail += "N=" + std::to_string(t.n) + ": median " + fmt(r.summary.median) + " in (" + fmt(t.lo) + "," +
                fmt(t.hi) + ")=" + (median_inside ? "yes" : "NO") + ", all slopes negative=" +
                (all_negative ? "yes" : "NO") + ", mean " + fmt(r.summary.mean) + "; ";
    log_n.push_back(std::log(static_cast<double>(t.n)));
    log_mean.push_back(std::log(r.summary.mean));
  }
  const auto fit = stats::least_squares(log_n, log_mean);
  const bool slope_ok = std::abs(fit.slope + 2.0) <= 0.4;
  const double t = seconds_since(start);
  v.passed = v.passed && slope_ok && t < 600.0;
  v.detail += "log-log slope of mean rho " + fmt(fit.slope) + " (want -2 +- 0.4): " + (slope_ok ? "yes" : "NO") +
              "; runtime " + fmt(t) + " s (< 600)";
  return v;
}

Verdict c12() {
  const auto r = run_experiment(absorb_spec(20, 20, 1000));
  const auto& h = r.histogram;
  const auto mode = static_cast<std::size_t>(std::max_element(h.begin(), h.end()) - h.begin());
  const auto value = [&](std::size_t k) { return r.histogram_origin + static_cast<std::int64_t>(k); };
  const bool interior = value(mode) >= 2 && value(mode) <= 19;
  // Moving away from the mode, a bin may exceed its predecessor only by
  // counting noise: 3 standard deviations of the Poisson difference.
  std::size_t breaks = 0;
  auto step_ok = [&](std::size_t prev, std::size_t next) {
    const double rise = static_cast<double>(h[next]) - static_cast<double>(h[prev]);
    return rise <= 3.0 * std::sqrt(static_cast<double>(h[prev] + h[next]));
  };
  for (std::size_t k = mode; k + 1 < h.size(); ++k) breaks += !step_ok(k, k + 1);
  for (std::size_t k = mode; k > 0; --k) breaks += !step_ok(k, k - 1);
  std::string counts;
  for (std::size_t k = 0; k < h.size(); ++k) counts += (k ? "," : "") + std::to_string(h[k]);
  return {interior && breaks == 0 && r.summary.completed == 1000,
          "mode at value " + std::to_string(value(mode)) + ", tail breaks " + std::to_string(breaks) +
              ", absorbed " + std::to_string(r.summary.completed) + "/1000, counts [" + counts + "]"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict c13() {
  const auto dir = fs::temp_directory_path() / "jante_acceptance";
  fs::create_directories(dir);
  std::vector<ExperimentSpec> specs;
  specs.push_back(absorb_spec(10, 6, 300));
  ExperimentSpec rate;
  rate.kind = ExperimentKind::rate_estimate;
  rate.topology = "cycle:8";
  rate.distribution = DistributionSpec::uniform01();
  rate.runs = 40;
  specs.push_back(rate);
  ExperimentSpec single;
  single.kind = ExperimentKind::single_run;
  single.topology = "counterexample";
  single.distribution = DistributionSpec::finite({0, 1});
  single.stop = MaxSteps{500};
  single.mode = StepMode::raw;
  single.runs = 20;
  specs.push_back(single);
  ExperimentSpec verify;
  verify.kind = ExperimentKind::verify_suite;
  verify.samples = 20'000;
  specs.push_back(verify);

  Verdict v{true, ""};
  std::size_t compared = 0;
  for (const auto& s : specs) {
    for (auto format : {OutputFormat::csv, OutputFormat::jsonl}) {
      std::string first;
      for (auto exec : {Execution::parallel, Execution::parallel, Execution::serial}) {
        const auto path = dir / ("out." + to_string(format));
        persist(run_experiment(s, exec), path, format);
        const auto bytes = slurp(path);
        if (first.empty()) {
          first = bytes;
        } else {
          ++compared;
          if (bytes != first) {
            v.passed = false;
            v.detail += to_string(s.kind) + "/" + to_string(format) + " differs; ";
          }
        }
      }
    }
  }
  v.detail += std::to_string(compared) + " reruns compared byte for byte across 4 kinds x 2 formats";
  return v;
}

const std::map<int, std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Verdict()>>> table = {
      {1, {"absorption of frozen runs", c1}},
      {2, {"f = 0 iff d = 0, exhaustive", c2}},
      {3, {"f never increases under floor-midpoint replacement", c3}},
      {4, {"absorbing-path length bound and windowed f decrease", c4}},
      {5, {"stable family on {0,1,5,6}", c5}},
      {6, {"six-node counterexample graph", c6}},
      {7, {"drift certification", c7}},
      {8, {"hard per-step bounds on embedded trajectories", c8}},
      {9, {"decrease probability at N=5", c9}},
      {10, {"metric equivalence", c10}},
      {11, {"convergence rates", c11}},
      {12, {"absorbing-value histogram shape at (20,20)", c12}},
      {13, {"byte-identical persisted output", c13}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s) to run (default: all)")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) {
    for (const auto& [k, _] : criteria()) selected.push_back(k);
  }

  bool all = true;
  for (int k : selected) {
    const auto& [title, fn] = criteria().at(k);
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    all = all && v.passed;
    std::cout << (v.passed ? "[PASS] C" : "[FAIL] C") << k << " " << title << " -- " << v.detail << std::endl;
  }
  return all ? 0 : 1;
}
