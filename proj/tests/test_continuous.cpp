#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jante/continuous.hpp"
#include "jante/stats.hpp"
#include "jante/verification.hpp"
#include "oracles.hpp"

using namespace jante;
using namespace jante::continuous;
using Window = std::array<double, 5>;

namespace {

LocalWindow unit(const Window& x) { return orient(x); }

Window random_window(Rng& rng) {
  Window x{};
  for (auto& v : x) v = uniform01(rng);
  return x;
}

bool centre_is_worst(const Window& x) {
  auto dev = [](double l, double m, double r) { return std::abs(m - 0.5 * (l + r)); };
  const double d3 = dev(x[1], x[2], x[3]);
  return d3 >= dev(x[0], x[1], x[2]) && d3 >= dev(x[2], x[3], x[4]);
}

}  // namespace

TEST_CASE("h on hand-checked configurations") {
  const auto c5 = Topology::cycle(5);
  CHECK(lyapunov_h(RealConfig{0, 0.5, 1, 0.5, 0}, c5) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(lyapunov_h(RealConfig{1, 6, 9, 6, 1}, c5) == doctest::Approx(314).epsilon(1e-15));
  CHECK_THROWS_AS(lyapunov_h(RealConfig(4, 0.1), Topology::cycle(4)), Error);
  CHECK_THROWS_AS(lyapunov_h(RealConfig(6, 0.1), Topology::counterexample_graph()), Error);
}

TEST_CASE("h agrees with the oracle and with the expanded form") {
  Rng rng{1};
  for (int k = 0; k < 20000; ++k) {
    const std::size_t n = 5 + static_cast<std::size_t>(k % 10);
    RealConfig x(n);
    for (auto& v : x) v = uniform01(rng);
    const auto c = Topology::cycle(n);
    const double h = lyapunov_h(x, c);
    CHECK(h == doctest::Approx(oracle::h(x)).epsilon(1e-13));
    CHECK(lyapunov_h_expanded(x, c) == doctest::Approx(h).epsilon(1e-10));
  }
}

TEST_CASE("hand-checked windows") {
  const auto w1 = unit({0.5, 0.5, 0.9, 0.5, 0.5});
  CHECK_FALSE(w1.reflected);
  const auto q1 = q_values(w1);
  const double expect1[] = {0.1, 0.5, 0.5, 0.5, 0.5};
  for (int k = 0; k < 5; ++k) CHECK(q1[k] == doctest::Approx(expect1[k]).epsilon(1e-14));
  const auto iv1 = acceptance_interval(w1);
  CHECK(iv1.a == doctest::Approx(0.1));
  CHECK(iv1.b == doctest::Approx(0.9));
  CHECK(drift_closed_form(w1) == doctest::Approx(-0.64).epsilon(1e-14));
  CHECK(drift_reduced_form(w1) == doctest::Approx(-0.64).epsilon(1e-14));

  const auto w2 = unit({0, 0.5, 1, 0.5, 0});
  const auto q2 = q_values(w2);
  const double expect2[] = {0, 0, 2.0 / 3.0, 0, 2.0 / 3.0};
  for (int k = 0; k < 5; ++k) CHECK(q2[k] == doctest::Approx(expect2[k]).epsilon(1e-14));
  CHECK(acceptance_interval(w2).a == 0.0);
  CHECK(acceptance_interval(w2).b == 1.0);
  CHECK(drift_closed_form(w2) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("reflection orients windows and preserves the drift") {
  const auto w = unit({0.5, 0.5, 0.1, 0.5, 0.5});
  CHECK(w.reflected);
  CHECK(w.x[2] == doctest::Approx(0.9));
  CHECK(w.to_original(w.x[2]) == doctest::Approx(0.1));
  CHECK(drift_closed_form(w) == doctest::Approx(-0.64).epsilon(1e-14));

  LocalWindow raw;
  raw.x = {0.5, 0.5, 0.1, 0.5, 0.5};
  CHECK_THROWS_AS(acceptance_interval(raw), Error);
  CHECK_THROWS_AS(acceptance_interval(unit({0.0, 1.0, 0.6, 0.0, 0.0})), Error);  // node 2 is worse
}

TEST_CASE("feasibility is exactly 'oriented with the centre worst'") {
  Rng rng{2};
  for (int k = 0; k < 100000; ++k) {
    const auto x = random_window(rng);
    const bool oriented = x[2] >= 0.5 * (x[1] + x[3]);
    CHECK(is_feasible(x) == (oriented && centre_is_worst(x)));
  }
}

TEST_CASE("acceptance interval matches a brute-force scan of the advance set") {
  Rng rng{3};
  int tested = 0;
  for (int k = 0; k < 3000; ++k) {
    const auto x = random_window(rng);
    if (!centre_is_worst(x)) continue;
    ++tested;
    const auto w = unit(x);
    const auto iv = acceptance_interval(w);
    const double lo = std::min(w.to_original(iv.a), w.to_original(iv.b));
    const double hi = std::max(w.to_original(iv.a), w.to_original(iv.b));
    const auto scan = oracle::scan_acceptance(x);
    REQUIRE_FALSE(scan.empty);
    CHECK(scan.contiguous);
    CHECK(scan.lo == doctest::Approx(lo).epsilon(1e-9));
    CHECK(scan.hi == doctest::Approx(hi).epsilon(1e-9));
  }
  CHECK(tested > 500);
}

TEST_CASE("closed-form drift matches quadrature over the scanned interval") {
  Rng rng{4};
  for (int k = 0; k < 2000; ++k) {
    const auto w = sample_feasible_window(rng);
    const auto scan = oracle::scan_acceptance(w.x);
    const double quad = oracle::drift_quadrature(w.x, scan.lo, scan.hi);
    CHECK(drift_closed_form(w) == doctest::Approx(quad).epsilon(1e-8).scale(1.0));
    CHECK(drift_reduced_form(w) == doctest::Approx(drift_closed_form(w)).epsilon(1e-12).scale(1.0));
    CHECK(drift_closed_form(w) <= 1e-12);
  }
}

TEST_CASE("Monte-Carlo drift estimate") {
  Rng rng{5};
  const auto w = unit({0.5, 0.5, 0.9, 0.5, 0.5});
  const auto mc = drift_monte_carlo(w, 100000, rng);
  CHECK(mc.samples == 100000);
  CHECK(std::abs(mc.estimate - (-0.64)) <= 4 * mc.std_error);
  CHECK_THROWS_AS(drift_monte_carlo(unit({0.5, 0.5, 0.5, 0.5, 0.5}), 100, rng), Error);
}

TEST_CASE("boundary windows pin one threshold to zero") {
  Rng rng{6};
  for (int k = 0; k < 2000; ++k) {
    const auto w = sample_boundary_window(rng);
    CHECK(is_feasible(w.x));
    const auto q = q_values(w);
    CHECK(std::any_of(q.begin(), q.end(), [](double v) { return std::abs(v) <= 1e-9; }));
    CHECK(drift_closed_form(w) <= 1e-12);
  }
}

TEST_CASE("metric bounds") {
  const auto b = check_metric_bounds(RealConfig{0, 0.5, 1, 0.5, 0}, Topology::cycle(5));
  CHECK(b.d == doctest::Approx(0.5));
  CHECK(b.max_increment == doctest::Approx(0.5));
  CHECK(b.h == doctest::Approx(4.5));
  CHECK(b.all_hold());
  CHECK(check_metric_bounds_sweep(50000, 1, Execution::serial).passed);
}

TEST_CASE("decrease near the neighbours' mean") {
  const Window x{0, 0.5, 1, 0.5, 0};
  CHECK(check_decrease_window(x, 0.5) == doctest::Approx(-2.5));
  CHECK_THROWS_AS(check_decrease_window(x, 0.7), Error);
  CHECK_THROWS_AS(check_decrease_window({0.0, 1.0, 0.6, 0.0, 0.0}, 0.5), Error);

  Rng rng{7};
  for (int k = 0; k < 20000; ++k) {
    const auto w = random_window(rng);
    if (!centre_is_worst(w)) continue;
    const double mu = 0.5 * (w[1] + w[3]);
    const double delta = std::abs(w[2] - mu);
    const double u = mu + (2 * uniform01(rng) - 1) * delta / 6;
    auto y = w;
    y[2] = u;
    // Independent evaluation of the change of h on a 5-cycle built from the window.
    const RealConfig before{w[0], w[1], w[2], w[3], w[4]};
    const RealConfig after{y[0], y[1], y[2], y[3], y[4]};
    const double local = [&] {
      auto term = [](const Window& z, double c) {
        return 2 * ((z[1] - c) * (z[1] - c) + (c - z[3]) * (c - z[3])) + (z[0] - c) * (z[0] - c) +
               (c - z[4]) * (c - z[4]);
      };
      return term(w, u) - term(w, w[2]);
    }();
    CHECK(check_decrease_window(w, u) == doctest::Approx(local).epsilon(1e-9).scale(1.0));
    CHECK(local <= -(5.0 / 6.0) * delta * delta + 1e-12);
    (void)before;
    (void)after;
  }
}

TEST_CASE("rejection region") {
  const Window x{0.5, 0.5, 0.9, 0.5, 0.5};
  CHECK(outside_rejection_interval(x, 0.95));
  CHECK(check_rejection_region(x, 0.95));
  CHECK_FALSE(outside_rejection_interval(x, 0.7));
  CHECK_FALSE(check_rejection_region(x, 0.7));
  CHECK(check_rejection_region_sweep(50000, 2, Execution::serial).passed);
}

TEST_CASE("worked replacement example on a 6-cycle") {
  const RealConfig x{0.5, 0.6, 0.5, 0.3, 0.25, 0.32};
  const auto c = Topology::cycle(6);
  const auto w0 = max_nonconformity<double>(std::span<const double>(x), c);
  CHECK(w0.argmax == std::vector<Node>{1});
  CHECK(w0.d == doctest::Approx(0.1));

  auto moved = x;
  moved[1] = 0.32;
  const auto w1 = max_nonconformity<double>(std::span<const double>(moved), c);
  CHECK(w1.argmax == std::vector<Node>{2});
  CHECK(w1.d == doctest::Approx(0.19));

  auto shrunk = x;
  shrunk[1] = 0.58;
  const auto w2 = max_nonconformity<double>(std::span<const double>(shrunk), c);
  CHECK(w2.argmax == std::vector<Node>{1});
  CHECK(w2.d == doctest::Approx(0.08));

  const auto win = orient(window_values(x, 1));
  const auto iv = acceptance_interval(win);
  auto inside = [&](double u) {
    const double v = win.to_oriented(u);
    return v > iv.a && v < iv.b;
  };
  CHECK(inside(0.32));
  CHECK(inside(0.58));
  CHECK_FALSE(inside(0.7));

  // Raw run: 0.7 is rejected (same worst node, larger d), then 0.58 advances.
  Trajectory<double> tr;
  tr.initial = x;
  StepRecord<double> r1;
  r1.replaced_node = 1;
  r1.new_value = 0.7;
  StepRecord<double> r2 = r1;
  r2.new_value = 0.58;
  tr.records = {r1, r2};
  const auto e = embed(tr, c);
  REQUIRE(e.transitions.size() == 1);
  CHECK(e.points[1].raw_time == 2);
  CHECK(e.transitions[0].old_value == 0.6);
  CHECK(e.transitions[0].new_value == 0.58);
  CHECK(e.transitions[0].d_after == doctest::Approx(0.08));
}

TEST_CASE("embedding raw trajectories") {
  const auto c = Topology::cycle(7);
  Rng rng{8};
  RealConfig x(7);
  for (auto& v : x) v = uniform01(rng);
  const auto tr = run<double>(x, c, DistributionSpec::uniform01(), MaxSteps{20000}, 3, StepMode::raw);
  const auto e = embed(tr, c);
  REQUIRE(e.transitions.size() > 20);
  REQUIRE(e.points.size() == e.transitions.size() + 1);
  for (std::size_t s = 0; s < e.transitions.size(); ++s) {
    const auto& t = e.transitions[s];
    CHECK(e.points[s + 1].raw_time > e.points[s].raw_time);
    CHECK((t.d_after < t.d_before || t.next_worst != t.node));
    std::size_t changed = 0;
    for (std::size_t i = 0; i < 7; ++i) changed += e.states[s][i] != e.states[s + 1][i];
    CHECK(changed <= 1);
  }
  const auto report = check_step_bounds(e);
  CHECK(report.hard_bounds_hold());
}

TEST_CASE("direct embedded sampler has the law of the embedded raw chain") {
  // One embedded transition from a fixed start, many times, both ways.
  const RealConfig x{0.5, 0.6, 0.5, 0.3, 0.25, 0.32};
  const auto c = Topology::cycle(6);
  const int reps = 20000;
  std::vector<double> direct_u, raw_u;
  int direct_moved = 0, raw_moved = 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = make_stream(100, static_cast<std::uint64_t>(r));
    const auto e = simulate_embedded(x, c, rng, {1});
    direct_u.push_back(e.transitions[0].new_value);
    direct_moved += e.transitions[0].next_worst != e.transitions[0].node;

    const auto tr = run<double>(x, c, DistributionSpec::uniform01(), MaxSteps{400}, 200 + r, StepMode::raw);
    const auto emb = embed(tr, c);
    REQUIRE_FALSE(emb.transitions.empty());
    raw_u.push_back(emb.transitions[0].new_value);
    raw_moved += emb.transitions[0].next_worst != emb.transitions[0].node;
  }
  auto mean_se = [](const std::vector<double>& v) {
    const double m = stats::mean(v);
    double ss = 0;
    for (double a : v) ss += (a - m) * (a - m);
    return std::pair{m, std::sqrt(ss / (v.size() - 1) / v.size())};
  };
  const auto [md, sd] = mean_se(direct_u);
  const auto [mr, sr] = mean_se(raw_u);
  CHECK(std::abs(md - mr) <= 4 * std::hypot(sd, sr));

  const double pd = direct_moved / double(reps);
  const double pr = raw_moved / double(reps);
  const double se = std::sqrt(pd * (1 - pd) / reps + pr * (1 - pr) / reps);
  CHECK(std::abs(pd - pr) <= 4 * se);

  // Both agree with U(a, b) on the oriented acceptance interval.
  const auto win = orient(window_values(x, 1));
  const auto iv = acceptance_interval(win);
  CHECK(std::abs(md - win.to_original(0.5 * (iv.a + iv.b))) <= 4 * sd);
}

TEST_CASE("renormalised frames keep ln xi consistent") {
  Rng rng{9};
  RealConfig x(5);
  for (auto& v : x) v = uniform01(rng);
  const auto e = simulate_embedded(x, Topology::cycle(5), rng, {3000});
  REQUIRE(e.points.size() == 3001);
  for (std::size_t s = 0; s < e.transitions.size(); ++s) {
    const auto& t = e.transitions[s];
    const double step = e.points[s + 1].log_xi - e.points[s].log_xi;
    CHECK(step == doctest::Approx(std::log(t.h_after / t.h_before)).epsilon(1e-9).scale(1.0));
    CHECK(std::isfinite(e.points[s].log_xi));
  }
  // Far below double precision of the raw values, yet still finite.
  CHECK(e.points.back().log_xi < -1000.0);
  const auto r = check_step_bounds(e);
  CHECK(r.hard_bounds_hold());
  CHECK(r.decrease_frequency() > 1.0 / 48.0);
}

TEST_CASE("step-bound reports merge and bound the decrease probability") {
  CHECK(decrease_factor(5) == doctest::Approx(1.0 - 5.0 / 4500.0));
  StepBoundsReport a;
  a.transitions = 100;
  a.decrease_events = 50;
  StepBoundsReport b;
  b.transitions = 100;
  b.decrease_events = 30;
  b.max_growth = 2.0;
  a.merge(b);
  CHECK(a.transitions == 200);
  CHECK(a.decrease_events == 80);
  CHECK(a.max_growth == 2.0);
  CHECK(a.decrease_frequency() == doctest::Approx(0.4));
  CHECK(a.decrease_lower_bound() < 0.4);
  CHECK(a.decrease_lower_bound() > 0.3);
}

TEST_CASE("verification sweeps: serial and parallel agree") {
  const auto s = check_drift_sign(30000, 4, Execution::serial);
  const auto p = check_drift_sign(30000, 4, Execution::parallel);
  CHECK(s.passed);
  CHECK(s.samples == p.samples);
  CHECK(s.extreme == p.extreme);
  const std::size_t sizes[] = {5, 8};
  const auto es = check_embedded_step_bounds(sizes, 8000, 2, Execution::serial);
  const auto ep = check_embedded_step_bounds(sizes, 8000, 2, Execution::parallel);
  CHECK(es.passed);
  CHECK(es.detail == ep.detail);
}

TEST_CASE("a sign-flipped drift formula is caught with a witness") {
  const DriftFormula flipped = [](const LocalWindow& w) { return -drift_closed_form(w); };
  const auto sign = check_drift_sign(2000, 1, Execution::serial, flipped);
  CHECK_FALSE(sign.passed);
  CHECK(sign.violations > 0);
  CHECK(sign.witness.size() == 5);
  const auto mc = check_drift_monte_carlo(20, 2000, 1, Execution::serial, flipped);
  CHECK_FALSE(mc.passed);
}

TEST_CASE("conditional drift of xi and limit shape") {
  const auto s = check_xi_conditional_drift(5, 20000, 50, 10, 3, Execution::serial);
  const auto p = check_xi_conditional_drift(5, 20000, 50, 10, 3, Execution::parallel);
  CHECK(s.passed);
  CHECK(s.samples == 20000);
  CHECK(s.extreme < 0.0);
  CHECK(s.detail == p.detail);

  const auto l = check_limit_shape(8, 20, 1000, 4, Execution::parallel);
  CHECK(l.passed);
  CHECK(l.extreme <= 10.0);

  // The spread statistic matches a direct evaluation on embedded raw states.
  const auto c = Topology::cycle(6);
  const RealConfig x{0.5, 0.6, 0.5, 0.3, 0.25, 0.32};
  const auto tr = run<double>(x, c, DistributionSpec::uniform01(), MaxSteps{300}, 5, StepMode::raw);
  const auto e = embed(tr, c);
  for (std::size_t k = 0; k < e.points.size(); ++k) {
    const auto w = max_nonconformity<double>(std::span<const double>(e.states[k]), c);
    double lo = 2, hi = -1;
    for (Node v = 0; v < 6; ++v) {
      if (std::find(w.argmax.begin(), w.argmax.end(), v) != w.argmax.end()) continue;
      lo = std::min(lo, e.states[k][v]);
      hi = std::max(hi, e.states[k][v]);
    }
    CHECK(e.points[k].log_spread == doctest::Approx(std::log(hi - lo)));
  }
}
