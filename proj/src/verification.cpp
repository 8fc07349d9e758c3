#include "jante/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "jante/discrete.hpp"
#include "jante/io.hpp"
#include "jante/stats.hpp"

namespace jante {

namespace {

using continuous::LocalWindow;

/// Per-chunk accumulator; folded in chunk order so the first witness is the
/// same under both execution policies.
struct Tally {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;
  double extreme = -std::numeric_limits<double>::infinity();
  std::vector<double> witness;

  void observe(double value) { extreme = std::max(extreme, value); }
  void fail(double amount, std::vector<double> w) {
    ++violations;
    max_violation = std::max(max_violation, amount);
    if (witness.empty()) witness = std::move(w);
  }
  void merge(const Tally& o) {
    samples += o.samples;
    violations += o.violations;
    max_violation = std::max(max_violation, o.max_violation);
    extreme = std::max(extreme, o.extreme);
    if (witness.empty()) witness = o.witness;
  }
};

template <class Fn>
Tally sweep(std::size_t samples, std::uint64_t seed, Execution exec, Fn&& body) {
  const auto parts = map_indexed(chunk_count(samples), exec, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    Tally t;
    const std::size_t count = std::min(kSweepChunk, samples - c * kSweepChunk);
    for (std::size_t k = 0; k < count; ++k) {
      ++t.samples;
      body(rng, t);
    }
    return t;
  });
  Tally total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

CheckResult finish(std::string name, const Tally& t, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.samples = t.samples;
  r.violations = t.violations;
  r.max_violation = t.max_violation;
  r.extreme = std::isfinite(t.extreme) ? t.extreme : 0.0;
  r.detail = std::move(detail);
  r.witness = t.witness;
  r.passed = t.violations == 0;
  return r;
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <class T>
std::vector<double> as_doubles(std::span<const T> x) {
  return {x.begin(), x.end()};
}

std::vector<double> window_witness(const std::array<double, 5>& x) { return {x.begin(), x.end()}; }

/// Random x in [0,1]^5 whose centre is the worst of nodes 2..4.
std::array<double, 5> sample_centre_worst(Rng& rng) {
  std::array<double, 5> x{};
  while (true) {
    for (auto& v : x) v = uniform01(rng);
    const double d2 = std::abs(x[1] - 0.5 * (x[0] + x[2]));
    const double d3 = std::abs(x[2] - 0.5 * (x[1] + x[3]));
    const double d4 = std::abs(x[3] - 0.5 * (x[2] + x[4]));
    if (d3 >= d2 && d3 >= d4 && d3 > 0.0) return x;
  }
}

double evaluate(const DriftFormula& drift, const LocalWindow& w) {
  return drift ? drift(w) : continuous::drift_closed_form(w);
}

std::string fmt(double v) { return format_double(v); }

constexpr std::size_t kEmbeddedRunLength = 2000;

continuous::StepBoundsReport embedded_runs(std::span<const std::size_t> sizes, std::size_t total_steps,
                                           std::uint64_t seed, Execution exec) {
  struct Job {
    std::size_t n;
    std::size_t steps;
  };
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    const std::size_t per_size = total_steps / sizes.size() + (k < total_steps % sizes.size() ? 1 : 0);
    for (std::size_t done = 0; done < per_size; done += kEmbeddedRunLength) {
      jobs.push_back({n, std::min(kEmbeddedRunLength, per_size - done)});
    }
  }
  const auto parts = map_indexed(jobs.size(), exec, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto topo = Topology::cycle(jobs[i].n);
    RealConfig x(jobs[i].n);
    for (auto& v : x) v = uniform01(rng);
    return continuous::check_step_bounds(
        continuous::simulate_embedded(std::move(x), topo, rng, {jobs[i].steps}));
  });
  continuous::StepBoundsReport total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace

CheckResult check_f_zero_iff_d_zero(std::size_t n, std::int64_t m) {
  const auto topo = Topology::cycle(n);
  DiscreteConfig x(n, 1);
  Tally t;
  while (true) {
    ++t.samples;
    const bool f_zero = discrete::lyapunov_f(x, topo) == 0;
    const bool d_zero = max_nonconformity<std::int64_t>(std::span<const std::int64_t>(x), topo).d.num == 0;
    if (f_zero != d_zero) t.fail(1.0, as_doubles<std::int64_t>(x));
    std::size_t i = 0;
    while (i < n && x[i] == m) x[i++] = 1;
    if (i == n) break;
    ++x[i];
  }
  return finish("f_zero_iff_d_zero_n" + std::to_string(n) + "_m" + std::to_string(m), t,
                "exhaustive over {1.." + std::to_string(m) + "}^" + std::to_string(n));
}

CheckResult check_f_decrease_sweep(std::size_t samples, std::uint64_t seed, Execution exec) {
  const auto t = sweep(samples, seed, exec, [](Rng& rng, Tally& t) {
    const std::size_t n = uniform_index(rng, 3, 12);
    const auto m = static_cast<std::int64_t>(uniform_index(rng, 1, 10));
    std::uniform_int_distribution<std::int64_t> value(1, m);
    DiscreteConfig x(n);
    for (auto& v : x) v = value(rng);
    const Node i = uniform_index(rng, 0, n - 1);
    const auto r = discrete::measure_f_decrease(x, Topology::cycle(n), i);
    t.observe(static_cast<double>(r.f_after - r.f_before));
    if (!r.holds()) {
      const auto required = r.doubled_d >= 2 ? r.f_before - 1 : r.f_before;
      auto w = as_doubles<std::int64_t>(x);
      w.insert(w.begin(), static_cast<double>(i + 1));
      t.fail(static_cast<double>(r.f_after - required), std::move(w));
    }
  });
  return finish("f_decrease_floor_midpoint", t, "N in [3,12], M in [1,10]; extreme = max f change");
}

CheckResult check_absorbing_paths(std::size_t starts, std::size_t n, std::int64_t m, std::uint64_t seed,
                                  Execution exec) {
  const auto topo = Topology::cycle(n);
  const auto t = sweep(starts, seed, exec, [&](Rng& rng, Tally& t) {
    std::uniform_int_distribution<std::int64_t> value(1, m);
    DiscreteConfig x(n);
    for (auto& v : x) v = value(rng);
    try {
      const auto path = discrete::construct_absorbing_path(x, topo, m);
      t.observe(static_cast<double>(path.length()));
      const bool within = static_cast<std::int64_t>(path.length()) <= path.bound;
      const bool windows = discrete::f_decreases_every_window(path, n - 2);
      const bool absorbed = discrete::is_absorbed(path.apply());
      if (!within || !windows || !absorbed) {
        t.fail(static_cast<double>(path.length()) - static_cast<double>(path.bound),
               as_doubles<std::int64_t>(x));
      }
    } catch (const Error& e) {
      if (e.code() != Errc::nontermination) throw;
      t.fail(1.0, as_doubles<std::int64_t>(x));
    }
  });
  const auto bound = m * m * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 2);
  return finish("absorbing_path_bound", t,
                "N=" + std::to_string(n) + ", M=" + std::to_string(m) + ", bound " + std::to_string(bound) +
                    ", window " + std::to_string(n - 2) + "; extreme = longest path");
}

CheckResult check_stable_family(std::size_t steps, std::uint64_t seed) {
  const auto topo = Topology::cycle(8);
  const auto law_spec = discrete::stable_family_law();
  const std::int64_t free_values[] = {0, 1, 5, 6};
  Tally t;
  std::size_t start = 0;
  for (auto a : free_values) {
    for (auto b : free_values) {
      Rng rng = make_stream(seed, start++);
      Replacement law{law_spec};
      auto x = discrete::stable_family_member(a, b);
      for (std::size_t s = 0; s <= steps; ++s) {
        const auto worst = max_nonconformity<std::int64_t>(std::span<const std::int64_t>(x), topo);
        ++t.samples;
        t.observe(worst.d.value());
        const bool nodes_ok = std::all_of(worst.argmax.begin(), worst.argmax.end(),
                                          [](Node v) { return v == 2 || v == 6; });
        const bool d_ok = worst.d == ExactDeviation{2, 1} || worst.d == ExactDeviation{3, 1};
        if (!discrete::in_stable_family(x) || discrete::is_absorbed(x) || !nodes_ok || !d_ok) {
          t.fail(1.0, as_doubles<std::int64_t>(x));
          break;
        }
        if (s < steps) step<std::int64_t>(x, topo, law, rng, StepMode::raw, s);
      }
    }
  }
  return finish("stable_family_closed", t, "16 starts [0,1,x,5,6,5,y,1]; extreme = max d");
}

CheckResult check_counterexample_graph(std::size_t steps, std::uint64_t seed) {
  const auto topo = Topology::counterexample_graph();
  const auto law_spec = DistributionSpec::finite({0, 1});
  Tally t;
  std::size_t start = 0;
  for (std::int64_t a : {0, 1}) {
    for (std::int64_t b : {0, 1}) {
      Rng rng = make_stream(seed, start++);
      Replacement law{law_spec};
      auto x = discrete::counterexample_start(a, b);
      for (std::size_t s = 0; s < steps; ++s) {
        const auto rec = step<std::int64_t>(x, topo, law, rng, StepMode::raw, s);
        ++t.samples;
        t.observe(static_cast<double>(rec.replaced_node + 1));
        if ((rec.replaced_node != 1 && rec.replaced_node != 2) || discrete::is_absorbed(x)) {
          auto w = as_doubles<std::int64_t>(x);
          w.insert(w.begin(), static_cast<double>(rec.replaced_node + 1));
          t.fail(1.0, std::move(w));
          break;
        }
      }
    }
  }
  return finish("counterexample_graph_nonabsorbing", t,
                "4 starts (0,x,y,1,0,1); only nodes 2,3 replaced; extreme = highest node replaced");
}

CheckResult check_drift_sign(std::size_t samples, std::uint64_t seed, Execution exec,
                             const DriftFormula& drift) {
  auto body = [&](bool boundary) {
    return [&drift, boundary](Rng& rng, Tally& t) {
      const auto w = boundary ? continuous::sample_boundary_window(rng) : continuous::sample_feasible_window(rng);
      const double d = evaluate(drift, w);
      t.observe(d);
      if (d > 1e-12) t.fail(d, window_witness(w.x));
    };
  };
  auto t = sweep(samples, seed, exec, body(false));
  t.merge(sweep(samples / 10, seed ^ 0xb0u, exec, body(true)));
  return finish("drift_nonpositive", t,
                std::to_string(samples) + " feasible + " + std::to_string(samples / 10) +
                    " boundary windows, tolerance 1e-12; extreme = max drift");
}

CheckResult check_drift_monte_carlo(std::size_t windows, std::size_t mc_samples, std::uint64_t seed,
                                    Execution exec, const DriftFormula& drift) {
  const auto parts = map_indexed(windows, exec, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto w = continuous::sample_feasible_window(rng);
    const auto mc = continuous::drift_monte_carlo(w, mc_samples, rng);
    const double closed = evaluate(drift, w);
    Tally t;
    t.samples = 1;
    const double z = std::abs(closed - mc.estimate) / mc.std_error;
    t.observe(z);
    if (!(z <= 4.0)) t.fail(z - 4.0, window_witness(w.x));
    return t;
  });
  Tally total;
  for (const auto& p : parts) total.merge(p);
  return finish("drift_matches_monte_carlo", total,
                std::to_string(mc_samples) + " draws per window, 4 standard errors; extreme = max |z|");
}

CheckResult check_metric_bounds_sweep(std::size_t samples, std::uint64_t seed, Execution exec) {
  const auto t = sweep(samples, seed, exec, [](Rng& rng, Tally& t) {
    const std::size_t n = uniform_index(rng, 5, 12);
    RealConfig x(n);
    for (auto& v : x) v = uniform01(rng);
    const auto b = continuous::check_metric_bounds(x, Topology::cycle(n));
    t.observe(b.max_increment / (static_cast<double>(n) * b.d));
    if (!b.all_hold()) {
      const double nn = static_cast<double>(n);
      const double excess = std::max({b.d - b.max_increment, b.max_increment - nn * b.d,
                                      2.0 * b.d * b.d - b.h, b.h - 6.0 * nn * nn * nn * b.d * b.d});
      t.fail(excess, x);
    }
  });
  return finish("metric_equivalence", t, "N in [5,12]; extreme = max |increment| / (N d)");
}

CheckResult check_decrease_window_sweep(std::size_t samples, std::uint64_t seed, Execution exec) {
  const auto t = sweep(samples, seed, exec, [](Rng& rng, Tally& t) {
    const auto x = sample_centre_worst(rng);
    const double mu = 0.5 * (x[1] + x[3]);
    const double delta = std::abs(x[2] - mu);
    const double u = mu + (2.0 * uniform01(rng) - 1.0) * delta / 6.0;
    try {
      const double change = continuous::check_decrease_window(x, u);
      t.observe(change / (delta * delta));
    } catch (const Error& e) {
      if (e.code() != Errc::verification_failure) throw;
      auto w = window_witness(x);
      w.push_back(u);
      t.fail(1.0, std::move(w));
    }
  });
  return finish("decrease_near_mean", t, "u within delta/6 of mu; extreme = max change / delta^2 (<= -5/6)");
}

CheckResult check_rejection_region_sweep(std::size_t samples, std::uint64_t seed, Execution exec) {
  const auto t = sweep(samples, seed, exec, [](Rng& rng, Tally& t) {
    while (true) {
      const auto x = sample_centre_worst(rng);
      const double u = uniform01(rng);
      if (!continuous::outside_rejection_interval(x, u)) continue;
      if (!continuous::check_rejection_region(x, u)) {
        auto w = window_witness(x);
        w.push_back(u);
        t.fail(1.0, std::move(w));
      }
      return;
    }
  });
  return finish("rejection_region", t, "u outside [mu - 3 delta, x3]: d3 grows and stays maximal");
}

CheckResult check_embedded_step_bounds(std::span<const std::size_t> sizes, std::size_t total_steps,
                                       std::uint64_t seed, Execution exec) {
  const auto r = embedded_runs(sizes, total_steps, seed, exec);
  CheckResult out;
  out.name = "embedded_step_bounds";
  out.samples = r.transitions;
  out.violations = r.jump_violations + r.growth_violations;
  out.max_violation = std::max({0.0, r.max_jump_ratio - 4.0, r.max_growth - 121.0});
  out.extreme = r.max_growth;
  std::string sizes_text;
  for (std::size_t n : sizes) sizes_text += (sizes_text.empty() ? "" : ",") + std::to_string(n);
  out.detail = "N in {" + sizes_text + "}; max jump/d = " + fmt(r.max_jump_ratio) +
               " (<= 4), max xi ratio = " + fmt(r.max_growth) + " (<= 121)";
  out.passed = r.hard_bounds_hold() && r.transitions > 0;
  return out;
}

CheckResult check_decrease_probability(std::size_t n, std::size_t total_steps, std::uint64_t seed,
                                       Execution exec) {
  const std::size_t sizes[] = {n};
  const auto r = embedded_runs(sizes, total_steps, seed, exec);
  CheckResult out;
  out.name = "decrease_probability_n" + std::to_string(n);
  out.samples = r.transitions;
  out.extreme = r.decrease_frequency();
  out.max_violation = std::max(0.0, 1.0 / 48.0 - r.decrease_lower_bound());
  out.violations = r.decrease_consistent() ? 0 : 1;
  out.detail = "frequency " + fmt(r.decrease_frequency()) + ", 99% lower bound " +
               fmt(r.decrease_lower_bound()) + " vs 1/48";
  out.passed = r.decrease_consistent();
  return out;
}

CheckResult check_xi_conditional_drift(std::size_t n, std::size_t total_steps, std::size_t run_length,
                                       std::size_t bins, std::uint64_t seed, Execution exec) {
  const auto topo = Topology::cycle(n);
  const std::size_t runs = std::max<std::size_t>(1, total_steps / run_length);
  const auto parts = map_indexed(runs, exec, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    RealConfig x(n);
    for (auto& v : x) v = uniform01(rng);
    const auto e = continuous::simulate_embedded(std::move(x), topo, rng, {run_length});
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t k = 0; k + 1 < e.points.size(); ++k) {
      const double now = std::exp(e.points[k].log_xi);
      pairs.emplace_back(now, std::exp(e.points[k + 1].log_xi) - now);
    }
    return pairs;
  });
  std::vector<std::pair<double, double>> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> centre, mean, variance;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = all.size() * b / bins;
    const std::size_t hi = all.size() * (b + 1) / bins;
    if (hi - lo < 2) continue;
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      sx += all[k].first;
      sy += all[k].second;
    }
    const double m = static_cast<double>(hi - lo);
    const double my = sy / m;
    double ss = 0.0;
    for (std::size_t k = lo; k < hi; ++k) ss += (all[k].second - my) * (all[k].second - my);
    centre.push_back(sx / m);
    mean.push_back(my);
    variance.push_back(std::max(ss / (m - 1.0) / m, std::numeric_limits<double>::min()));
  }
  const auto fit = stats::weighted_least_squares(centre, mean, variance);
  const double slack_intercept = fit.intercept - stats::kZ99 * fit.se_intercept;
  const double slack_slope = fit.slope - stats::kZ99 * fit.se_slope;

  CheckResult out;
  out.name = "xi_conditional_drift_n" + std::to_string(n);
  out.samples = all.size();
  out.extreme = fit.slope;
  out.max_violation = std::max({0.0, slack_intercept, slack_slope});
  out.passed = slack_intercept <= 0.0 && slack_slope <= 0.0;
  out.violations = (slack_intercept > 0.0) + (slack_slope > 0.0);
  out.detail = std::to_string(centre.size()) + " bins; intercept " + fmt(fit.intercept) + " (se " +
               fmt(fit.se_intercept) + "), slope " + fmt(fit.slope) + " (se " + fmt(fit.se_slope) + ")";
  if (!out.passed) out.witness = {fit.intercept, fit.se_intercept, fit.slope, fit.se_slope};
  return out;
}

CheckResult check_limit_shape(std::size_t n, std::size_t runs, std::size_t steps, std::uint64_t seed,
                              Execution exec) {
  struct Ends {
    double ratio = 0.0;  // spread / sqrt(h) at the end
    double log_half = 0.0;
    double log_end = 0.0;
  };
  const auto topo = Topology::cycle(n);
  const auto ends = map_indexed(runs, exec, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    RealConfig x(n);
    for (auto& v : x) v = uniform01(rng);
    const auto e = continuous::simulate_embedded(std::move(x), topo, rng, {steps});
    const auto& last = e.points.back();
    return Ends{std::exp(last.log_spread - 0.5 * last.log_xi), e.points[steps / 2].log_spread, last.log_spread};
  });
  Tally t;
  std::vector<double> half, end;
  for (const auto& r : ends) {
    ++t.samples;
    t.observe(r.ratio);
    if (!(r.ratio <= 10.0)) t.fail(r.ratio - 10.0, {r.ratio});
    half.push_back(r.log_half);
    end.push_back(r.log_end);
  }
  const double med_half = stats::quantile(half, 0.5);
  const double med_end = stats::quantile(end, 0.5);
  auto out = finish("limit_shape_n" + std::to_string(n), t,
                    "max spread/sqrt(h) = " + fmt(t.extreme) + " (<= 10); median ln spread " + fmt(med_half) +
                        " at s=" + std::to_string(steps / 2) + ", " + fmt(med_end) + " at s=" + std::to_string(steps));
  if (!(med_end < med_half)) {
    out.passed = false;
    ++out.violations;
  }
  return out;
}

CheckResult check_consistency(std::size_t samples, std::uint64_t seed, Execution exec) {
  const auto t = sweep(samples, seed, exec, [](Rng& rng, Tally& t) {
    const auto w = continuous::sample_feasible_window(rng);
    std::array<double, 5> mirrored{};
    for (std::size_t k = 0; k < 5; ++k) mirrored[k] = 1.0 - w.x[k];
    const auto back = continuous::orient(mirrored);
    const double d1 = continuous::drift_closed_form(w);
    const double d2 = continuous::drift_closed_form(back);
    const double d3 = continuous::drift_reduced_form(w);

    const std::size_t n = uniform_index(rng, 5, 12);
    RealConfig x(n);
    for (auto& v : x) v = uniform01(rng);
    const auto topo = Topology::cycle(n);
    const double h1 = continuous::lyapunov_h(x, topo);
    const double h2 = continuous::lyapunov_h_expanded(x, topo);

    const double gap = std::max({std::abs(d1 - d2), std::abs(d1 - d3), std::abs(h1 - h2) / (1.0 + h1)});
    t.observe(gap);
    if (!back.reflected || gap > 1e-12) t.fail(gap, window_witness(w.x));
  });
  return finish("reflection_and_form_consistency", t,
                "drift under reflection, closed vs reduced drift, h vs expanded h; extreme = max gap");
}

VerificationReport run_verification(const VerifyOptions& o) {
  const std::size_t s = std::max<std::size_t>(o.samples, 100);
  const auto exec = o.execution;
  auto seed_for = [&](std::uint64_t k) { return check_seed(o.seed, k); };
  const std::size_t step_sizes[] = {5, 8, 12};

  VerificationReport r;
  r.seed = o.seed;
  r.checks.push_back(check_f_zero_iff_d_zero(5, 3));
  r.checks.push_back(check_f_zero_iff_d_zero(6, 2));
  r.checks.push_back(check_f_decrease_sweep(s, seed_for(1), exec));
  r.checks.push_back(check_absorbing_paths(std::max<std::size_t>(s / 100, 10), 8, 5, seed_for(2), exec));
  r.checks.push_back(check_stable_family(10'000, seed_for(3)));
  r.checks.push_back(check_counterexample_graph(10'000, seed_for(4)));
  r.checks.push_back(check_drift_sign(s, seed_for(5), exec, o.drift));
  r.checks.push_back(check_drift_monte_carlo(std::max<std::size_t>(s / 1000, 10), 10'000, seed_for(6), exec,
                                             o.drift));
  r.checks.push_back(check_metric_bounds_sweep(s, seed_for(7), exec));
  r.checks.push_back(check_decrease_window_sweep(s, seed_for(8), exec));
  r.checks.push_back(check_rejection_region_sweep(s, seed_for(9), exec));
  r.checks.push_back(check_embedded_step_bounds(step_sizes, std::max<std::size_t>(s / 10, 3000), seed_for(10), exec));
  r.checks.push_back(check_decrease_probability(5, std::max<std::size_t>(s / 10, 2000), seed_for(11), exec));
  r.checks.push_back(check_consistency(std::max<std::size_t>(s / 10, 100), seed_for(12), exec));
  r.checks.push_back(check_xi_conditional_drift(5, std::max<std::size_t>(s / 10, 2000), 50, 10, seed_for(13), exec));
  r.checks.push_back(check_limit_shape(8, std::max<std::size_t>(s / 10000, 20), 2000, seed_for(14), exec));
  return r;
}

std::string to_json(const VerificationReport& report, int indent) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"samples", c.samples},
                      {"violations", c.violations},
                      {"max_violation", c.max_violation},
                      {"extreme", c.extreme},
                      {"passed", c.passed},
                      {"detail", c.detail},
                      {"witness", c.witness}});
  }
  nlohmann::json doc = {{"seed", report.seed}, {"passed", report.passed()}, {"checks", checks}};
  return doc.dump(indent);
}

}  // namespace jante
