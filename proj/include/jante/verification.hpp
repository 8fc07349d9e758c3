#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jante/continuous.hpp"
#include "jante/parallel.hpp"

namespace jante {

/// Outcome of one property check over many samples.
struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;  // largest amount by which the inequality failed
  double extreme = 0.0;        // most adverse checked quantity seen
  std::string detail;
  std::vector<double> witness;  // first offending sample, if any
  bool passed = true;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const noexcept {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// JSON document: {"seed", "passed", "checks": [{name, samples, violations,
/// max_violation, extreme, passed, detail, witness}]}.
std::string to_json(const VerificationReport& report, int indent = 2);

/// Drift formula under test; the default is the closed form. Swapping it
/// for a corrupted one is how the suite's own failure path is exercised.
using DriftFormula = std::function<double(const continuous::LocalWindow&)>;

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Base sample size for the random sweeps; other checks scale from it.
  std::size_t samples = 100'000;
  Execution execution = Execution::parallel;
  DriftFormula drift;  // empty: drift_closed_form
};

// Individual checks. Random sweeps split their samples into fixed chunks with
// one RNG stream per chunk, so results do not depend on `exec`.

/// f(x) = 0 iff d(x) = 0 for every x in {1..m}^n.
CheckResult check_f_zero_iff_d_zero(std::size_t n, std::int64_t m);

/// Random (config, node) pairs with N in [3, 12] and M in [1, 10]:
/// floor-midpoint replacement never raises f, and lowers it by >= 1 when the
/// node's doubled deviation is >= 2.
CheckResult check_f_decrease_sweep(std::size_t samples, std::uint64_t seed, Execution exec);

/// Absorbing paths from random starts in {1..m}^n: T <= m^2 n (n-2) and f
/// drops within every (n-2)-step window.
CheckResult check_absorbing_paths(std::size_t starts, std::size_t n, std::int64_t m,
                                  std::uint64_t seed, Execution exec);

/// Raw steps from each of the 16 stable-family members: never leaves the
/// family, never absorbs, worst node 3 or 7 (1-based) with d in {2, 3}.
CheckResult check_stable_family(std::size_t steps, std::uint64_t seed);

/// Raw steps on the six-node graph from each of the 4 starts: only nodes 2
/// and 3 (1-based) are ever replaced and no constant state is reached.
CheckResult check_counterexample_graph(std::size_t steps, std::uint64_t seed);

/// drift <= 1e-12 on feasible windows plus samples/10 boundary windows.
CheckResult check_drift_sign(std::size_t samples, std::uint64_t seed, Execution exec,
                             const DriftFormula& drift = {});

/// |drift - MC mean| <= 4 SE on `windows` windows of `mc_samples` draws each.
CheckResult check_drift_monte_carlo(std::size_t windows, std::size_t mc_samples,
                                    std::uint64_t seed, Execution exec,
                                    const DriftFormula& drift = {});

/// The four metric inequalities on random cycles with N in [5, 12].
CheckResult check_metric_bounds_sweep(std::size_t samples, std::uint64_t seed, Execution exec);

/// Change of h <= -(5/6) delta^2 for u within delta/6 of mu.
CheckResult check_decrease_window_sweep(std::size_t samples, std::uint64_t seed, Execution exec);

/// Replacements outside [mu - 3 delta, x3] make d3 grow and stay maximal.
CheckResult check_rejection_region_sweep(std::size_t samples, std::uint64_t seed,
                                         Execution exec);

/// Hard per-step bounds on direct embedded runs split evenly over `sizes`.
CheckResult check_embedded_step_bounds(std::span<const std::size_t> sizes,
                                       std::size_t total_steps, std::uint64_t seed,
                                       Execution exec);

/// 99% lower bound on P(xi(s+1) <= rho xi(s)) is at least 1/48 for cycle n.
CheckResult check_decrease_probability(std::size_t n, std::size_t total_steps,
                                       std::uint64_t seed, Execution exec);

/// Direct embedded runs of `run_length` steps on cycle n, pairs
/// (xi(s), xi(s+1) - xi(s)) grouped into `bins` equal-count bins of xi(s):
/// the weighted fit of bin means on bin centres has intercept and slope no
/// larger than their one-sided 99% bounds allow.
CheckResult check_xi_conditional_drift(std::size_t n, std::size_t total_steps, std::size_t run_length,
                                       std::size_t bins, std::uint64_t seed, Execution exec);

/// At the end of each of `runs` direct embedded runs on cycle n: the values
/// outside the argmax spread by at most 10 sqrt(h), and the median spread at
/// `steps` is below the median at steps / 2.
CheckResult check_limit_shape(std::size_t n, std::size_t runs, std::size_t steps, std::uint64_t seed,
                              Execution exec);

/// Reflecting a window leaves its drift unchanged, and the two h forms agree.
CheckResult check_consistency(std::size_t samples, std::uint64_t seed, Execution exec);

/// Seed of the k-th check's stream family in run_verification.
inline std::uint64_t check_seed(std::uint64_t seed, std::uint64_t k) {
  return seed * 0x9e3779b97f4a7c15ULL + k * 0x100000001b3ULL;
}

/// Every check above at sizes scaled from options.samples.
VerificationReport run_verification(const VerifyOptions& options);

}  // namespace jante
