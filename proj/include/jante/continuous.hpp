#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "jante/process.hpp"
#include "jante/rng.hpp"
#include "jante/topology.hpp"

namespace jante::continuous {

/// h(x) = 2 sum (x_i - x_{i+1})^2 + sum (x_i - x_{i+2})^2 on a cycle with
/// N >= 5, evaluated from differences.
double lyapunov_h(std::span<const double> x, const Topology& topo);

/// The expanded form 2 sum (3 x_i^2 - 2 x_i x_{i+1} - x_i x_{i+2}). Loses
/// precision for nearly constant x; kept as a consistency check.
double lyapunov_h_expanded(std::span<const double> x, const Topology& topo);

/// max_i |x_i - x_{i-1}| on the cycle.
double max_abs_increment(std::span<const double> x);

// ---------------------------------------------------------------------------
// Local window around the worst node

/// Admissible replacement range and the reflection used to orient windows.
/// Orientation maps x to pivot - x, so the lowest admissible value in oriented
/// coordinates is pivot - upper. The default is the unit interval reflected by
/// x -> 1 - x.
struct Bounds {
  double lower = 0.0;
  double upper = 1.0;
  double pivot = 1.0;
};

/// Five consecutive fitnesses centred on position 3 (index 2), oriented so
/// that x3 lies above the mean of its neighbours.
struct LocalWindow {
  std::array<double, 5> x{};
  bool reflected = false;
  double pivot = 1.0;
  double floor = 0.0;  // lowest admissible replacement, oriented coordinates

  double mu() const noexcept { return 0.5 * (x[1] + x[3]); }
  double delta() const noexcept { return std::abs(x[2] - mu()); }
  double d2() const noexcept { return std::abs(x[1] - 0.5 * (x[0] + x[2])); }
  double d3() const noexcept { return delta(); }
  double d4() const noexcept { return std::abs(x[3] - 0.5 * (x[2] + x[4])); }

  /// Maps an oriented value back to the caller's coordinates.
  double to_original(double u) const noexcept { return reflected ? pivot - u : u; }
  double to_oriented(double u) const noexcept { return reflected ? pivot - u : u; }
};

/// x_{c-2}, ..., x_{c+2} on a cycle (indices mod N).
std::array<double, 5> window_values(std::span<const double> x, Node center);

/// Reflects the window when x3 < mu so that x3 >= mu afterwards.
LocalWindow orient(const std::array<double, 5>& raw, const Bounds& bounds = {});

using QValues = std::array<double, 5>;

/// The five thresholds: the replacement u advances the embedded chain when
/// u > Q0 (d3 shrinks) or u > Q1..Q4 (a neighbour overtakes node 3).
QValues q_values(const LocalWindow& w);

/// Replacement values in (a, b) advance the embedded chain (d drops or the
/// worst node moves); values outside are rejected.
struct AcceptanceInterval {
  double a = 0.0;
  double b = 0.0;
  QValues q{};
};

/// a = max{floor, min Q}, b = x3. Requires an oriented window whose centre is
/// at least as bad as its neighbours; domain_error otherwise.
AcceptanceInterval acceptance_interval(const LocalWindow& w);

/// Expected one-step change of h for u ~ U[a, b]:
/// 2(a^2 + b^2 + ab) + (2 x3 - a - b)(x1 + 2x2 + 2x4 + x5) - 6 x3^2.
double drift_closed_form(const LocalWindow& w);

/// The same drift with b = x3 substituted:
/// (x3 - a)(x1 + 2x2 - 4x3 + 2x4 + x5 - 2a).
double drift_reduced_form(const LocalWindow& w);

/// Change of h when x3 is replaced by u.
double drift_integrand(const LocalWindow& w, double u);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Plain Monte-Carlo mean of drift_integrand over u ~ U[a, b]. Throws
/// degenerate_interval when a == b.
MonteCarloEstimate drift_monte_carlo(const LocalWindow& w, std::size_t n, Rng& rng);

/// x3 > max{Q1, Q2, Q3, Q4}: node 3 is strictly the worst of nodes 2, 3, 4
/// and lies above its neighbours' mean.
bool is_feasible(const std::array<double, 5>& x);

/// Rejection sample from [0,1]^5 conditioned on is_feasible.
LocalWindow sample_feasible_window(Rng& rng);

/// Feasible window with one of Q0..Q4 pinned to 0 (within 1e-9).
LocalWindow sample_boundary_window(Rng& rng);

// ---------------------------------------------------------------------------
// Inequality checks

struct MetricBounds {
  double d = 0.0;
  double max_increment = 0.0;
  double h = 0.0;
  std::size_t n = 0;

  bool increment_lower() const noexcept { return d <= max_increment; }
  bool increment_upper() const noexcept { return max_increment <= static_cast<double>(n) * d; }
  bool h_lower(double tol = 1e-12) const noexcept { return 2.0 * d * d <= h + tol; }
  bool h_upper(double tol = 1e-12) const noexcept {
    const double nn = static_cast<double>(n);
    return h <= 6.0 * nn * nn * nn * d * d + tol;
  }
  bool all_hold() const noexcept {
    return increment_lower() && increment_upper() && h_lower() && h_upper();
  }
};

/// d <= max|x_i - x_{i-1}| <= N d and 2 d^2 <= h <= 6 N^3 d^2.
MetricBounds check_metric_bounds(std::span<const double> x, const Topology& topo);

/// Change of h when x3 is replaced by u in [mu - delta/6, mu + delta/6],
/// computed as -2 (x3 - u)(3u + A), A = 3x3 - x1 - 2x2 - 2x4 - x5. Throws
/// domain_error when u is outside that window or node 3 is not the worst of
/// nodes 2..4, and verification_failure if the change exceeds -(5/6) delta^2.
double check_decrease_window(const std::array<double, 5>& x, double u);

/// After replacing x3 by u: did d3 grow and stay strictly the largest of
/// d2, d3, d4? Guaranteed when u lies outside [mu - 3 delta, x3] (oriented).
bool check_rejection_region(const std::array<double, 5>& x, double u);

/// Is u outside [mu - 3 delta, x3] (or [x3, mu + 3 delta] when x3 < mu)?
bool outside_rejection_interval(const std::array<double, 5>& x, double u);

// ---------------------------------------------------------------------------
// Embedded chain

/// State X~(s) of the embedded chain.
struct EmbeddedPoint {
  std::size_t raw_time = 0;  // nu_s; equals s for the direct sampler
  Node worst = 0;
  double log_d = 0.0;
  double log_xi = 0.0;  // ln h(X~(s))
  /// ln of max - min over the nodes outside the argmax; -inf when they agree.
  double log_spread = 0.0;
};

/// X~(s) -> X~(s+1). Lengths share one coordinate frame per transition.
struct EmbeddedTransition {
  Node node = 0;         // worst node of X~(s), the one replaced
  Node next_worst = 0;   // worst node of X~(s+1)
  double old_value = 0.0;
  double new_value = 0.0;
  double d_before = 0.0;
  double d_after = 0.0;
  double h_before = 0.0;
  double h_after = 0.0;
  double magnitude = 0.0;  // largest |value| in the frame, for rounding slack

  double jump() const noexcept { return std::abs(new_value - old_value); }
};

struct EmbeddedTrajectory {
  std::size_t node_count = 0;
  bool raw_times = false;  // points carry true nu_s (extracted from a raw run)
  std::vector<EmbeddedPoint> points;
  std::vector<EmbeddedTransition> transitions;
  /// Absolute states X~(s); filled only by embed().
  std::vector<RealConfig> states;
};

/// Extracts nu_0 = 0 < nu_1 < ... from a raw continuous trajectory on a cycle:
/// nu_{k+1} is the first t > nu_k at which the worst node differs from the
/// one at nu_k or d(X(t)) < d(X(nu_k)) (strict floating comparison).
EmbeddedTrajectory embed(const Trajectory<double>& tr, const Topology& topo);

struct EmbeddedOptions {
  std::size_t steps = 0;
  /// Renormalize the working frame when the spread of values drops below
  /// this. Keeps ln h exact long after the values agree to double precision.
  double renormalize_below = 1e-3;
};

/// Simulates the embedded chain directly: at each step the worst node is
/// replaced by u ~ U(a, b), the law of the raw chain observed at its next
/// embedded time. Requires a cycle with N >= 5 and values in [0,1].
EmbeddedTrajectory simulate_embedded(RealConfig initial, const Topology& topo, Rng& rng,
                                     const EmbeddedOptions& options);

/// rho = 1 - 5 / (36 N^3).
double decrease_factor(std::size_t n);

struct StepBoundsReport {
  std::size_t node_count = 0;
  std::size_t transitions = 0;
  std::size_t jump_violations = 0;
  double max_jump_ratio = 0.0;  // jump / d(X~(s))
  std::size_t growth_violations = 0;
  double max_growth = 0.0;  // xi(s+1) / xi(s)
  std::size_t decrease_events = 0;  // xi(s+1) <= rho xi(s)

  bool hard_bounds_hold() const noexcept {
    return jump_violations == 0 && growth_violations == 0;
  }
  double decrease_frequency() const noexcept;
  /// One-sided 99% Wilson lower bound on the decrease probability.
  double decrease_lower_bound() const noexcept;
  bool decrease_consistent() const noexcept { return decrease_lower_bound() >= 1.0 / 48.0; }

  void add(const EmbeddedTrajectory& e);
  void merge(const StepBoundsReport& other);
};

/// Sup-norm step <= 4 d, xi(s+1) <= 121 xi(s), and the frequency of
/// xi(s+1) <= rho xi(s).
StepBoundsReport check_step_bounds(const EmbeddedTrajectory& e);

}  // namespace jante::continuous
