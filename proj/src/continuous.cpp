#include "jante/continuous.hpp"

#include <algorithm>
#include <cfloat>
#include <limits>

#include "jante/stats.hpp"

namespace jante::continuous {

namespace {

void require_h_domain(std::size_t n, const Topology& topo) {
  if (!topo.is_cycle()) {
    throw Error(Errc::unsupported_topology, "the potential h is defined on cycles only, got " + topo.descriptor());
  }
  if (topo.size() < 5) throw Error(Errc::invalid_size, "the potential h needs N >= 5");
  if (n != topo.size()) throw Error(Errc::invalid_configuration, "configuration length differs from node count");
}

QValues q_of(const std::array<double, 5>& x) {
  const auto [x1, x2, x3, x4, x5] = x;
  return {x2 + x4 - x3, x1 - x2 + x4, (-x1 + 3.0 * x2 + x4) / 3.0, x2 - x4 + x5,
          (x2 + 3.0 * x4 - x5) / 3.0};
}

struct Deviations {
  double d2, d3, d4, mu;
};

Deviations deviations(const std::array<double, 5>& x) {
  const double mu = 0.5 * (x[1] + x[3]);
  return {std::abs(x[1] - 0.5 * (x[0] + x[2])), std::abs(x[2] - mu), std::abs(x[3] - 0.5 * (x[2] + x[4])), mu};
}

double weighted_neighbour_sum(const std::array<double, 5>& x) {
  return x[0] + 2.0 * x[1] + 2.0 * x[3] + x[4];
}

double h_change(const std::array<double, 5>& x, double u) {
  return 2.0 * (u - x[2]) * (3.0 * (u + x[2]) - weighted_neighbour_sum(x));
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

/// max - min over nodes not in `argmax` (sorted).
double bystander_spread(std::span<const double> x, const std::vector<Node>& argmax) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Node v = 0; v < x.size(); ++v) {
    if (std::binary_search(argmax.begin(), argmax.end(), v)) continue;
    lo = std::min(lo, x[v]);
    hi = std::max(hi, x[v]);
  }
  return hi - lo;
}

}  // namespace

double lyapunov_h(std::span<const double> x, const Topology& topo) {
  require_h_domain(x.size(), topo);
  const std::size_t n = x.size();
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = x[i] - x[(i + 1) % n];
    const double d2 = x[i] - x[(i + 2) % n];
    h += 2.0 * d1 * d1 + d2 * d2;
  }
  return h;
}

double lyapunov_h_expanded(std::span<const double> x, const Topology& topo) {
  require_h_domain(x.size(), topo);
  const std::size_t n = x.size();
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    h += 3.0 * x[i] * x[i] - 2.0 * x[i] * x[(i + 1) % n] - x[i] * x[(i + 2) % n];
  }
  return 2.0 * h;
}

double max_abs_increment(std::span<const double> x) {
  const std::size_t n = x.size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i] - x[(i + n - 1) % n]));
  return m;
}

std::array<double, 5> window_values(std::span<const double> x, Node center) {
  const std::size_t n = x.size();
  if (n < 5) throw Error(Errc::invalid_size, "a five-value window needs N >= 5");
  if (center >= n) throw Error(Errc::index_out_of_range, "window centre out of range");
  std::array<double, 5> w{};
  for (std::size_t k = 0; k < 5; ++k) w[k] = x[(center + n + k - 2) % n];
  return w;
}

LocalWindow orient(const std::array<double, 5>& raw, const Bounds& bounds) {
  LocalWindow w;
  w.pivot = bounds.pivot;
  w.x = raw;
  if (raw[2] < 0.5 * (raw[1] + raw[3])) {
    w.reflected = true;
    for (auto& v : w.x) v = bounds.pivot - v;
    w.floor = bounds.pivot - bounds.upper;
  } else {
    w.floor = bounds.lower;
  }
  return w;
}

QValues q_values(const LocalWindow& w) { return q_of(w.x); }

AcceptanceInterval acceptance_interval(const LocalWindow& w) {
  const auto dev = deviations(w.x);
  if (w.x[2] < dev.mu) throw Error(Errc::domain_error, "window is not oriented: x3 < mu");
  if (dev.d3 < dev.d2 || dev.d3 < dev.d4) {
    throw Error(Errc::domain_error, "window centre is not the worst of nodes 2..4");
  }
  AcceptanceInterval out;
  out.q = q_of(w.x);
  out.a = std::max(w.floor, *std::min_element(out.q.begin(), out.q.end()));
  out.b = w.x[2];
  return out;
}

double drift_closed_form(const LocalWindow& w) {
  const auto [a, b, q] = acceptance_interval(w);
  const double x3 = w.x[2];
  return 2.0 * (a * a + b * b + a * b) + (2.0 * x3 - a - b) * weighted_neighbour_sum(w.x) - 6.0 * x3 * x3;
}

double drift_reduced_form(const LocalWindow& w) {
  const double a = acceptance_interval(w).a;
  const double x3 = w.x[2];
  return (x3 - a) * (weighted_neighbour_sum(w.x) - 4.0 * x3 - 2.0 * a);
}

double drift_integrand(const LocalWindow& w, double u) { return h_change(w.x, u); }

MonteCarloEstimate drift_monte_carlo(const LocalWindow& w, std::size_t n, Rng& rng) {
  const auto iv = acceptance_interval(w);
  if (!(iv.b > iv.a)) throw Error(Errc::degenerate_interval, "acceptance interval has zero length");
  if (n < 2) throw Error(Errc::insufficient_data, "Monte-Carlo needs >= 2 samples");
  // Welford accumulation keeps the variance stable for small drifts.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = iv.a + (iv.b - iv.a) * uniform01(rng);
    const double v = h_change(w.x, u);
    const double delta = v - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

bool is_feasible(const std::array<double, 5>& x) {
  const auto q = q_of(x);
  return x[2] > std::max({q[1], q[2], q[3], q[4]});
}

LocalWindow sample_feasible_window(Rng& rng) {
  std::array<double, 5> x{};
  do {
    for (auto& v : x) v = uniform01(rng);
  } while (!is_feasible(x));
  return orient(x);
}

LocalWindow sample_boundary_window(Rng& rng) {
  // Q0..Q4 are translation-equivariant, so shifting the window by -Q_k pins
  // Q_k to zero without changing feasibility.
  std::uniform_int_distribution<int> pick(0, 4);
  while (true) {
    auto w = sample_feasible_window(rng);
    const int k = pick(rng);
    const double shift = q_of(w.x)[static_cast<std::size_t>(k)];
    auto x = w.x;
    for (auto& v : x) v -= shift;
    if (std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; }) && is_feasible(x) &&
        std::abs(q_of(x)[static_cast<std::size_t>(k)]) <= 1e-9) {
      return orient(x);
    }
  }
}

MetricBounds check_metric_bounds(std::span<const double> x, const Topology& topo) {
  MetricBounds out;
  out.n = x.size();
  out.h = lyapunov_h(x, topo);
  out.d = max_nonconformity<double>(x, topo).d;
  out.max_increment = max_abs_increment(x);
  return out;
}

double check_decrease_window(const std::array<double, 5>& x, double u) {
  const auto dev = deviations(x);
  if (dev.d3 < dev.d2 || dev.d3 < dev.d4) {
    throw Error(Errc::domain_error, "node 3 is not the worst of nodes 2..4");
  }
  if (std::abs(u - dev.mu) > dev.d3 / 6.0) {
    throw Error(Errc::domain_error, "u lies outside [mu - delta/6, mu + delta/6]");
  }
  const double A = 3.0 * x[2] - weighted_neighbour_sum(x);
  const double change = -2.0 * (x[2] - u) * (3.0 * u + A);
  if (change > -(5.0 / 6.0) * dev.d3 * dev.d3 + 1e-12) {
    throw Error(Errc::verification_failure, "h change exceeds -(5/6) delta^2");
  }
  return change;
}

bool check_rejection_region(const std::array<double, 5>& x, double u) {
  const auto before = deviations(x);
  auto y = x;
  y[2] = u;
  const auto after = deviations(y);
  return after.d3 > before.d3 && after.d3 > after.d2 && after.d3 > after.d4;
}

bool outside_rejection_interval(const std::array<double, 5>& x, double u) {
  const auto dev = deviations(x);
  if (x[2] >= dev.mu) return u < dev.mu - 3.0 * dev.d3 || u > x[2];
  return u < x[2] || u > dev.mu + 3.0 * dev.d3;
}

EmbeddedTrajectory embed(const Trajectory<double>& tr, const Topology& topo) {
  require_h_domain(tr.initial.size(), topo);
  EmbeddedTrajectory out;
  out.node_count = topo.size();
  out.raw_times = true;

  RealConfig x = tr.initial;
  auto anchor = max_nonconformity<double>(std::span<const double>(x), topo);
  auto push_point = [&](std::size_t t, const WorstNodes<double>& w) {
    out.points.push_back({t, w.argmax.front(), std::log(w.d), std::log(lyapunov_h(x, topo)),
                          std::log(bystander_spread(x, w.argmax))});
    out.states.push_back(x);
  };
  push_point(0, anchor);

  for (std::size_t t = 0; t < tr.records.size(); ++t) {
    x.at(tr.records[t].replaced_node) = tr.records[t].new_value;
    auto now = max_nonconformity<double>(std::span<const double>(x), topo);
    if (now.argmax.front() == anchor.argmax.front() && !(now.d < anchor.d)) continue;

    const RealConfig& prev = out.states.back();
    const Node j = anchor.argmax.front();
    EmbeddedTransition step;
    step.node = j;
    step.next_worst = now.argmax.front();
    step.old_value = prev[j];
    step.new_value = x[j];
    step.d_before = anchor.d;
    step.d_after = now.d;
    step.h_before = lyapunov_h(prev, topo);
    step.h_after = lyapunov_h(x, topo);
    step.magnitude = std::max(max_abs(prev), max_abs(x));
    out.transitions.push_back(step);
    push_point(t + 1, now);
    anchor = std::move(now);
  }
  return out;
}

EmbeddedTrajectory simulate_embedded(RealConfig initial, const Topology& topo, Rng& rng,
                                     const EmbeddedOptions& options) {
  require_h_domain(initial.size(), topo);
  for (double v : initial) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::invalid_configuration, "fitness outside [0,1]");
  }

  EmbeddedTrajectory out;
  out.node_count = topo.size();
  out.points.reserve(options.steps + 1);
  out.transitions.reserve(options.steps);

  // Actual values are offset + scale * y; only log(scale) is kept exactly.
  RealConfig y = std::move(initial);
  double offset = 0.0;
  double log_scale = 0.0;
  auto worst = max_nonconformity<double>(std::span<const double>(y), topo);
  double h = lyapunov_h(y, topo);

  for (std::size_t s = 0;; ++s) {
    const Node j = select_worst<double>(worst, rng);
    out.points.push_back({s, j, log_scale + std::log(worst.d), 2.0 * log_scale + std::log(h),
                          log_scale + std::log(bystander_spread(y, worst.argmax))});
    if (s == options.steps) break;

    const double scale = std::exp(log_scale);
    const double inf = std::numeric_limits<double>::infinity();
    Bounds bounds;
    bounds.lower = scale > 0.0 ? -offset / scale : -inf;
    bounds.upper = scale > 0.0 ? (1.0 - offset) / scale : inf;
    bounds.pivot = 0.0;  // y -> -y keeps full precision in scaled frames
    const auto w = orient(window_values(y, j), bounds);
    const auto iv = acceptance_interval(w);

    double u = iv.a;
    for (int tries = 0; !(u > iv.a && u < iv.b); ++tries) {
      if (tries == 64) throw Error(Errc::degenerate_interval, "acceptance interval too short to sample");
      u = iv.a + (iv.b - iv.a) * uniform01(rng);
    }

    EmbeddedTransition step;
    step.node = j;
    step.old_value = y[j];
    step.d_before = worst.d;
    step.h_before = h;
    step.magnitude = max_abs(y);
    y[j] = w.to_original(u);
    worst = max_nonconformity<double>(std::span<const double>(y), topo);
    h = lyapunov_h(y, topo);
    step.new_value = y[j];
    step.next_worst = worst.argmax.front();
    step.d_after = worst.d;
    step.h_after = h;
    step.magnitude = std::max(step.magnitude, max_abs(y));
    out.transitions.push_back(step);

    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double spread = *hi - *lo;
    if (spread < options.renormalize_below && spread > 0.0) {
      double m = 0.0;
      for (double v : y) m += v;
      m /= static_cast<double>(y.size());
      offset += scale * m;
      for (auto& v : y) v = (v - m) / spread;
      log_scale += std::log(spread);
      worst = max_nonconformity<double>(std::span<const double>(y), topo);
      h = lyapunov_h(y, topo);
    }
  }
  return out;
}

double decrease_factor(std::size_t n) {
  const double nn = static_cast<double>(n);
  return 1.0 - 5.0 / (36.0 * nn * nn * nn);
}

double StepBoundsReport::decrease_frequency() const noexcept {
  return transitions == 0 ? 0.0 : static_cast<double>(decrease_events) / static_cast<double>(transitions);
}

double StepBoundsReport::decrease_lower_bound() const noexcept {
  return stats::wilson_lower(decrease_events, transitions, stats::kZ99);
}

void StepBoundsReport::add(const EmbeddedTrajectory& e) {
  if (node_count == 0) node_count = e.node_count;
  const double rho = decrease_factor(e.node_count);
  for (const auto& t : e.transitions) {
    ++transitions;
    const double jump = t.jump();
    const double slack = 32.0 * DBL_EPSILON * t.magnitude;
    if (jump > 4.0 * t.d_before + slack) ++jump_violations;
    if (t.d_before > 0.0) max_jump_ratio = std::max(max_jump_ratio, jump / t.d_before);
    const double growth = t.h_after / t.h_before;
    if (growth > 121.0 * (1.0 + 1e-12)) ++growth_violations;
    max_growth = std::max(max_growth, growth);
    if (t.h_after <= rho * t.h_before) ++decrease_events;
  }
}

void StepBoundsReport::merge(const StepBoundsReport& other) {
  if (node_count == 0) node_count = other.node_count;
  transitions += other.transitions;
  jump_violations += other.jump_violations;
  max_jump_ratio = std::max(max_jump_ratio, other.max_jump_ratio);
  growth_violations += other.growth_violations;
  max_growth = std::max(max_growth, other.max_growth);
  decrease_events += other.decrease_events;
}

StepBoundsReport check_step_bounds(const EmbeddedTrajectory& e) {
  StepBoundsReport r;
  r.add(e);
  return r;
}

}  // namespace jante::continuous
