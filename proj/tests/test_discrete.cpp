#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "jante/discrete.hpp"
#include "jante/verification.hpp"
#include "oracles.hpp"

using namespace jante;
using namespace jante::discrete;

namespace {

std::vector<Node> worst_nodes(const DiscreteConfig& x, const Topology& t) {
  return max_nonconformity<std::int64_t>(std::span<const std::int64_t>(x), t).argmax;
}

DiscreteConfig random_config(std::size_t n, std::int64_t m, Rng& rng) {
  DiscreteConfig x(n);
  for (auto& v : x) v = std::uniform_int_distribution<std::int64_t>(1, m)(rng);
  return x;
}

}  // namespace

TEST_CASE("f on hand-checked configurations") {
  const auto c5 = Topology::cycle(5);
  CHECK(lyapunov_f(DiscreteConfig{1, 6, 9, 6, 1}, c5) == 68);
  CHECK(lyapunov_f(DiscreteConfig{1, 6, 6, 6, 1}, c5) == 50);
  CHECK(lyapunov_f(DiscreteConfig{4, 4, 4, 4, 4}, c5) == 0);
  CHECK_THROWS_AS(lyapunov_f(DiscreteConfig(6, 1), Topology::counterexample_graph()), Error);
}

TEST_CASE("f agrees with the edge-sum oracle") {
  Rng rng{2};
  for (int k = 0; k < 5000; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 15)(rng);
    const auto x = random_config(n, 20, rng);
    CHECK(lyapunov_f(x, Topology::cycle(n)) == oracle::f(x));
  }
}

TEST_CASE("sum of squared deviations is not monotone along midpoint moves") {
  // Doubled deviations keep the arithmetic exact: 4 * 23.5 = 94, 4 * 25 = 100.
  auto doubled_sq = [](const DiscreteConfig& x) {
    std::int64_t s = 0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t d = 2 * x[i] - x[(i + n - 1) % n] - x[(i + 1) % n];
      s += d * d;
    }
    return s;
  };
  const DiscreteConfig x{1, 6, 9, 6, 1};
  const auto y = floor_midpoint_replace(x, Topology::cycle(5), 2);
  CHECK(y == DiscreteConfig{1, 6, 6, 6, 1});
  CHECK(doubled_sq(x) == 94);
  CHECK(doubled_sq(y) == 100);
  CHECK(lyapunov_f(y, Topology::cycle(5)) < lyapunov_f(x, Topology::cycle(5)));
}

TEST_CASE("diagnostics") {
  const auto d = diagnose(DiscreteConfig{1, 3, 3, 2, 1}, Topology::cycle(5));
  CHECK(d.max_value == 3);
  CHECK(d.argmax_indices == std::vector<Node>{1, 2});
  CHECK(d.f_value == 4 + 0 + 1 + 1 + 0);
  CHECK(d.doubled_d == 2);
}

TEST_CASE("f vanishes exactly on constant configurations") {
  for (auto [n, m] : {std::pair<std::size_t, std::int64_t>{5, 3}, {6, 2}, {4, 4}}) {
    const auto r = check_f_zero_iff_d_zero(n, m);
    CHECK(r.passed);
    CHECK(r.samples == static_cast<std::size_t>(std::pow(m, n)));
  }
}

TEST_CASE("floor-midpoint replacement, exhaustive on {1..4}^5") {
  const auto c = Topology::cycle(5);
  DiscreteConfig x(5, 1);
  std::size_t cases = 0;
  while (true) {
    for (Node i = 0; i < 5; ++i) {
      const auto r = measure_f_decrease(x, c, i);
      auto y = x;
      y[i] = (x[(i + 4) % 5] + x[(i + 1) % 5]) / 2;  // positive values: floor
      CHECK(r.f_after == oracle::f(y));
      CHECK(r.f_after <= r.f_before);
      if (r.doubled_d >= 2) CHECK(r.f_after <= r.f_before - 1);
      CHECK(r.holds());
      ++cases;
    }
    std::size_t k = 0;
    while (k < 5 && x[k] == 4) x[k++] = 1;
    if (k == 5) break;
    ++x[k];
  }
  CHECK(cases == 1024 * 5);
}

TEST_CASE("absorbing paths: hand cases") {
  const auto p = construct_absorbing_path(DiscreteConfig{1, 2, 1}, Topology::cycle(3), 2);
  CHECK(p.length() == 1);
  CHECK(p.steps[0].node == 1);
  CHECK(p.steps[0].new_value == 1);
  CHECK(p.bound == 12);

  const auto flat = construct_absorbing_path(DiscreteConfig(6, 3), Topology::cycle(6), 4);
  CHECK(flat.length() == 0);
  CHECK(flat.f_sequence() == std::vector<std::int64_t>{0});

  CHECK_THROWS_AS(construct_absorbing_path(DiscreteConfig{1, 2, 7}, Topology::cycle(3), 5), Error);

  std::ostringstream csv;
  write_path_csv(csv, p);
  CHECK(csv.str() == "t,node,new_value,f_before,f_after\n0,2,1,2,0\n");
}

TEST_CASE("absorbing paths replace worst nodes and respect the bound") {
  Rng rng{8};
  const auto c = Topology::cycle(8);
  const auto adj = oracle::cycle_adjacency(8);
  for (int k = 0; k < 2000; ++k) {
    const auto x = random_config(8, 5, rng);
    const auto path = construct_absorbing_path(x, c, 5);
    CHECK(static_cast<std::int64_t>(path.length()) <= 1200);
    CHECK(is_absorbed(path.apply()));
    CHECK(f_decreases_every_window(path, 6));

    auto cur = x;
    for (const auto& s : path.steps) {
      const auto [d, arg] = oracle::worst(cur, adj);
      CHECK(std::find(arg.begin(), arg.end(), s.node) != arg.end());
      CHECK(s.new_value == (cur[(s.node + 7) % 8] + cur[(s.node + 1) % 8]) / 2);
      CHECK(s.f_after <= s.f_before);
      cur[s.node] = s.new_value;
    }
  }
}

TEST_CASE("window check catches a stalled path") {
  AbsorbingPath p;
  p.start = {1, 2, 1, 1, 1};
  p.steps = {{0, 1, 2, 2}, {0, 1, 2, 2}, {0, 1, 2, 2}, {1, 1, 2, 0}};
  CHECK_FALSE(f_decreases_every_window(p, 3));
  CHECK(f_decreases_every_window(p, 4));
}

TEST_CASE("stable family is closed under every possible move") {
  const auto c = Topology::cycle(8);
  const std::int64_t vals[] = {0, 1, 5, 6};
  for (auto a : vals) {
    for (auto b : vals) {
      const auto x = stable_family_member(a, b);
      CHECK(in_stable_family(x));
      const auto w = max_nonconformity<std::int64_t>(std::span<const std::int64_t>(x), c);
      CHECK((w.d == ExactDeviation{2, 1} || w.d == ExactDeviation{3, 1}));
      for (Node j : w.argmax) {
        CHECK((j == 2 || j == 6));
        for (auto v : vals) {
          auto y = x;
          y[j] = v;
          CHECK(in_stable_family(y));
          CHECK_FALSE(is_absorbed(y));
        }
      }
    }
  }
  const auto w06 = worst_nodes(stable_family_member(0, 6), c);
  CHECK(w06 == std::vector<Node>{2, 6});
  CHECK_THROWS_AS(stable_family_member(2, 0), Error);
  CHECK_FALSE(in_stable_family(DiscreteConfig{0, 1, 0, 5, 6, 5, 0, 2}));
}

TEST_CASE("six-node graph: only the two interior path nodes ever move") {
  const auto g = Topology::counterexample_graph();
  for (std::int64_t a : {0, 1}) {
    for (std::int64_t b : {0, 1}) {
      const auto x = counterexample_start(a, b);
      for (Node j : worst_nodes(x, g)) {
        CHECK((j == 1 || j == 2));
        for (std::int64_t v : {0, 1}) {
          auto y = x;
          y[j] = v;
          CHECK(y[0] == 0);
          CHECK(y[3] == 1);
          CHECK(y[4] == 0);
          CHECK(y[5] == 1);
          CHECK_FALSE(is_absorbed(y));
        }
      }
    }
  }
}

TEST_CASE("sweep checks pass at small sizes under both execution policies") {
  for (auto exec : {Execution::serial, Execution::parallel}) {
    CHECK(check_f_decrease_sweep(20000, 3, exec).passed);
    CHECK(check_absorbing_paths(300, 8, 5, 3, exec).passed);
  }
  CHECK(check_stable_family(2000, 1).passed);
  CHECK(check_counterexample_graph(2000, 1).passed);
}
