#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "jante/process.hpp"
#include "jante/topology.hpp"

namespace jante::discrete {

/// f(x) = sum_i (x_i - x_{i+1})^2 on a cycle, exact. Throws
/// unsupported_topology for general graphs.
std::int64_t lyapunov_f(std::span<const std::int64_t> x, const Topology& topo);

struct Diagnostics {
  std::int64_t f_value = 0;
  std::int64_t max_value = 0;       // Max(x)
  std::vector<Node> argmax_indices;  // S(x): nodes holding Max(x)
  std::int64_t doubled_d = 0;        // max_i |2 x_i - x_{i-1} - x_{i+1}|
};

Diagnostics diagnose(std::span<const std::int64_t> x, const Topology& topo);

/// Copy of x with x_i replaced by floor((x_{i-1} + x_{i+1}) / 2).
DiscreteConfig floor_midpoint_replace(std::span<const std::int64_t> x, const Topology& topo, Node i);

enum class FChange { unchanged_or_less, decreased_by_one_or_more };

struct FDecrease {
  std::int64_t f_before = 0;
  std::int64_t f_after = 0;
  std::int64_t doubled_d = 0;  // |2 x_i - x_{i-1} - x_{i+1}| before replacement
  FChange change = FChange::unchanged_or_less;

  /// f never increases; and drops by >= 1 when d_i >= 1.
  bool holds() const noexcept {
    return f_after <= f_before && (doubled_d < 2 || f_after <= f_before - 1);
  }
};

/// Evaluates the f-change of floor_midpoint_replace at node i without
/// asserting anything.
FDecrease measure_f_decrease(std::span<const std::int64_t> x, const Topology& topo, Node i);

/// As measure_f_decrease, but throws verification_failure if the decrease
/// inequalities are violated.
FDecrease check_f_decrease(std::span<const std::int64_t> x, const Topology& topo, Node i);

struct PathStep {
  Node node = 0;
  std::int64_t new_value = 0;
  std::int64_t f_before = 0;
  std::int64_t f_after = 0;
};

/// Explicit sequence of worst-node replacements driving a configuration to a
/// constant one.
struct AbsorbingPath {
  DiscreteConfig start;
  std::vector<PathStep> steps;
  std::int64_t bound = 0;  // M^2 N (N-2)

  std::size_t length() const noexcept { return steps.size(); }
  DiscreteConfig apply() const;
  /// f_0, f_1, ..., f_T along the path.
  std::vector<std::int64_t> f_sequence() const;
};

/// Greedy path: each step replaces a worst node by the floor of its
/// neighbours' midpoint, preferring (lowest-index) worst nodes that hold the
/// maximum fitness, otherwise the lowest-index worst node. Requires a cycle
/// and values in {1,...,m}. Throws nontermination if the path would exceed
/// m^2 N (N-2) steps.
AbsorbingPath construct_absorbing_path(std::span<const std::int64_t> x, const Topology& topo,
                                       std::int64_t m);

/// Does f drop by >= 1 across every window of N-2 path steps while positive?
/// Steps past the end of the path count as f = 0.
bool f_decreases_every_window(const AbsorbingPath& path, std::size_t window);

/// Support {0,1,5,6}, on which the 8-cycle family below is closed.
DistributionSpec stable_family_law();

/// [0,1,x,5,6,5,y,1] with x, y in {0,1,5,6}; domain_error otherwise.
DiscreteConfig stable_family_member(std::int64_t x, std::int64_t y);

bool in_stable_family(std::span<const std::int64_t> c);

/// (0, x, y, 1, 0, 1) on counterexample_graph(); x, y in {0,1}.
DiscreteConfig counterexample_start(std::int64_t x, std::int64_t y);

bool is_absorbed(std::span<const std::int64_t> x);

/// CSV: t,node,new_value,f_before,f_after with 1-based nodes.
void write_path_csv(std::ostream& out, const AbsorbingPath& path);

}  // namespace jante::discrete
