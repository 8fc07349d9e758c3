#include "jante/discrete.hpp"

#include <algorithm>
#include <array>
#include <ostream>

namespace jante::discrete {

namespace {

void require_cycle(std::span<const std::int64_t> x, const Topology& topo) {
  if (!topo.is_cycle()) {
    throw Error(Errc::unsupported_topology, "the potential f is defined on cycles only, got " + topo.descriptor());
  }
  if (x.size() != topo.size()) {
    throw Error(Errc::invalid_configuration, "configuration length differs from node count");
  }
}

std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

std::int64_t doubled_deviation(std::span<const std::int64_t> x, std::size_t i) {
  const std::size_t n = x.size();
  const std::int64_t v = 2 * x[i] - x[(i + n - 1) % n] - x[(i + 1) % n];
  return v < 0 ? -v : v;
}

constexpr std::array<std::int64_t, 4> kStableSupport{0, 1, 5, 6};

bool in_stable_support(std::int64_t v) {
  return std::find(kStableSupport.begin(), kStableSupport.end(), v) != kStableSupport.end();
}

}  // namespace

std::int64_t lyapunov_f(std::span<const std::int64_t> x, const Topology& topo) {
  require_cycle(x, topo);
  const std::size_t n = x.size();
  std::int64_t f = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t diff = x[i] - x[(i + 1) % n];
    f += diff * diff;
  }
  return f;
}

Diagnostics diagnose(std::span<const std::int64_t> x, const Topology& topo) {
  Diagnostics out;
  out.f_value = lyapunov_f(x, topo);
  out.max_value = *std::max_element(x.begin(), x.end());
  for (Node i = 0; i < x.size(); ++i) {
    if (x[i] == out.max_value) out.argmax_indices.push_back(i);
    out.doubled_d = std::max(out.doubled_d, doubled_deviation(x, i));
  }
  return out;
}

DiscreteConfig floor_midpoint_replace(std::span<const std::int64_t> x, const Topology& topo, Node i) {
  require_cycle(x, topo);
  if (i >= x.size()) throw Error(Errc::index_out_of_range, "node " + std::to_string(i) + " out of range");
  const std::size_t n = x.size();
  DiscreteConfig y(x.begin(), x.end());
  y[i] = floor_div2(x[(i + n - 1) % n] + x[(i + 1) % n]);
  return y;
}

FDecrease measure_f_decrease(std::span<const std::int64_t> x, const Topology& topo, Node i) {
  const auto y = floor_midpoint_replace(x, topo, i);
  FDecrease out;
  out.f_before = lyapunov_f(x, topo);
  out.f_after = lyapunov_f(y, topo);
  out.doubled_d = doubled_deviation(x, i);
  out.change = out.f_after <= out.f_before - 1 ? FChange::decreased_by_one_or_more
                                               : FChange::unchanged_or_less;
  return out;
}

FDecrease check_f_decrease(std::span<const std::int64_t> x, const Topology& topo, Node i) {
  auto out = measure_f_decrease(x, topo, i);
  if (!out.holds()) {
    throw Error(Errc::verification_failure,
                "f went from " + std::to_string(out.f_before) + " to " + std::to_string(out.f_after) +
                    " at node " + std::to_string(i + 1) + " with 2 d_i = " + std::to_string(out.doubled_d));
  }
  return out;
}

DiscreteConfig AbsorbingPath::apply() const {
  DiscreteConfig x = start;
  for (const auto& s : steps) x[s.node] = s.new_value;
  return x;
}

std::vector<std::int64_t> AbsorbingPath::f_sequence() const {
  std::vector<std::int64_t> out;
  out.reserve(steps.size() + 1);
  if (steps.empty()) {
    const Topology topo = Topology::cycle(start.size());
    out.push_back(lyapunov_f(start, topo));
    return out;
  }
  out.push_back(steps.front().f_before);
  for (const auto& s : steps) out.push_back(s.f_after);
  return out;
}

AbsorbingPath construct_absorbing_path(std::span<const std::int64_t> x, const Topology& topo,
                                       std::int64_t m) {
  require_cycle(x, topo);
  if (m < 1) throw Error(Errc::invalid_distribution, "M must be >= 1");
  for (auto v : x) {
    if (v < 1 || v > m) {
      throw Error(Errc::invalid_configuration,
                  "value " + std::to_string(v) + " outside {1,...," + std::to_string(m) + "}");
    }
  }
  const auto n = static_cast<std::int64_t>(x.size());
  AbsorbingPath path;
  path.start.assign(x.begin(), x.end());
  path.bound = m * m * n * (n - 2);

  DiscreteConfig cur = path.start;
  std::int64_t f = lyapunov_f(cur, topo);
  std::vector<Node> worst;
  while (true) {
    std::int64_t dmax = 0;
    worst.clear();
    for (Node i = 0; i < cur.size(); ++i) {
      const auto d = doubled_deviation(cur, i);
      if (d > dmax) {
        dmax = d;
        worst.assign(1, i);
      } else if (d == dmax && dmax > 0) {
        worst.push_back(i);
      }
    }
    if (dmax == 0) break;
    if (static_cast<std::int64_t>(path.steps.size()) >= path.bound) {
      throw Error(Errc::nontermination,
                  "absorbing path exceeded M^2 N (N-2) = " + std::to_string(path.bound) + " steps");
    }
    const std::int64_t top = *std::max_element(cur.begin(), cur.end());
    const auto at_max = std::find_if(worst.begin(), worst.end(), [&](Node i) { return cur[i] == top; });
    const Node j = at_max != worst.end() ? *at_max : worst.front();

    const auto next = floor_midpoint_replace(cur, topo, j);
    const std::int64_t f_next = lyapunov_f(next, topo);
    path.steps.push_back({j, next[j], f, f_next});
    cur = next;
    f = f_next;
  }
  return path;
}

bool f_decreases_every_window(const AbsorbingPath& path, std::size_t window) {
  if (window == 0) throw Error(Errc::domain_error, "window must be positive");
  const auto f = path.f_sequence();
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f[s] <= 0) continue;
    const std::int64_t later = s + window < f.size() ? f[s + window] : 0;
    if (later > f[s] - 1) return false;
  }
  return true;
}

DistributionSpec stable_family_law() {
  return DistributionSpec::finite({kStableSupport.begin(), kStableSupport.end()});
}

DiscreteConfig stable_family_member(std::int64_t x, std::int64_t y) {
  if (!in_stable_support(x) || !in_stable_support(y)) {
    throw Error(Errc::domain_error, "stable-family free values must lie in {0,1,5,6}");
  }
  return {0, 1, x, 5, 6, 5, y, 1};
}

bool in_stable_family(std::span<const std::int64_t> c) {
  return c.size() == 8 && c[0] == 0 && c[1] == 1 && in_stable_support(c[2]) && c[3] == 5 &&
         c[4] == 6 && c[5] == 5 && in_stable_support(c[6]) && c[7] == 1;
}

DiscreteConfig counterexample_start(std::int64_t x, std::int64_t y) {
  if ((x != 0 && x != 1) || (y != 0 && y != 1)) {
    throw Error(Errc::domain_error, "counterexample free values must lie in {0,1}");
  }
  return {0, x, y, 1, 0, 1};
}

bool is_absorbed(std::span<const std::int64_t> x) { return is_constant<std::int64_t>(x); }

void write_path_csv(std::ostream& out, const AbsorbingPath& path) {
  out << "t,node,new_value,f_before,f_after\n";
  for (std::size_t t = 0; t < path.steps.size(); ++t) {
    const auto& s = path.steps[t];
    out << t << ',' << s.node + 1 << ',' << s.new_value << ',' << s.f_before << ',' << s.f_after << '\n';
  }
}

}  // namespace jante::discrete
