#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "jante/error.hpp"
#include "jante/rng.hpp"
#include "jante/topology.hpp"

namespace jante {

/// Fitness values are exact integers in discrete mode and doubles in
/// continuous mode.
template <class T>
concept Fitness = std::same_as<T, std::int64_t> || std::same_as<T, double>;

using DiscreteConfig = std::vector<std::int64_t>;
using RealConfig = std::vector<double>;

// ---------------------------------------------------------------------------
// Replacement law

struct Uniform01 {};

/// Finite integer support with strictly positive probabilities.
struct FiniteSupport {
  std::vector<std::int64_t> values;  // strictly increasing
  std::vector<double> probs;
};

class DistributionSpec {
 public:
  DistributionSpec() = default;  // uniform on [0,1]

  /// Support {1,...,m}; uniform when `probs` is empty.
  static DistributionSpec discrete(std::int64_t m, std::vector<double> probs = {});

  /// Arbitrary finite integer support (used for the counterexamples).
  static DistributionSpec finite(std::vector<std::int64_t> values,
                                 std::vector<double> probs = {});

  static DistributionSpec uniform01() { return DistributionSpec{}; }

  bool is_discrete() const noexcept {
    return std::holds_alternative<FiniteSupport>(law_);
  }
  const FiniteSupport& support() const;

  /// Support is an arithmetic progression (one value counts).
  bool is_equally_spaced() const noexcept;
  /// Support is exactly {1,...,M}.
  bool is_unit_range() const noexcept;

  std::int64_t min_value() const { return support().values.front(); }
  std::int64_t max_value() const { return support().values.back(); }
  bool contains(std::int64_t v) const;
  /// Index of `v` in the support; throws if absent.
  std::size_t index_of(std::int64_t v) const;

  /// "uniform01", "discrete:M=4" or "finite:0,1,5,6" (probabilities appended
  /// when not uniform).
  std::string descriptor() const;

 private:
  explicit DistributionSpec(FiniteSupport s) : law_(std::move(s)) {}
  std::variant<Uniform01, FiniteSupport> law_;
};

/// Draws independent replacement values from a DistributionSpec.
class Replacement {
 public:
  explicit Replacement(const DistributionSpec& spec);

  template <Fitness T>
  T draw(Rng& rng) {
    if constexpr (std::same_as<T, double>) {
      if (discrete_) throw Error(Errc::invalid_distribution, "continuous draw from a discrete law");
      return uniform01(rng);
    } else {
      if (!discrete_) throw Error(Errc::invalid_distribution, "discrete draw from a continuous law");
      return values_[pick_(rng)];
    }
  }

  template <Fitness T>
  T operator()(Rng& rng) { return draw<T>(rng); }

 private:
  bool discrete_ = false;
  std::vector<std::int64_t> values_;
  std::discrete_distribution<std::size_t> pick_;
};

// ---------------------------------------------------------------------------
// Non-conformity

/// Exact rational |deg * x_v - sum of neighbours| / deg, compared by
/// cross-multiplication so that ties on general graphs are exact.
struct ExactDeviation {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend std::strong_ordering operator<=>(const ExactDeviation& l,
                                          const ExactDeviation& r) noexcept {
    const __int128 a = static_cast<__int128>(l.num) * r.den;
    const __int128 b = static_cast<__int128>(r.num) * l.den;
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const ExactDeviation& l, const ExactDeviation& r) noexcept {
    return (l <=> r) == 0;
  }
};

template <Fitness T>
using deviation_t = std::conditional_t<std::same_as<T, double>, double, ExactDeviation>;

inline double to_double(double d) noexcept { return d; }
inline double to_double(const ExactDeviation& d) noexcept { return d.value(); }

/// |x_v - mean of neighbour values|.
template <Fitness T>
deviation_t<T> nonconformity(std::span<const T> x, const Topology& topo, Node v) {
  const auto nb = topo.neighbors(v);
  if constexpr (std::same_as<T, double>) {
    double sum = 0.0;
    for (Node u : nb) sum += x[u];
    return std::abs(x[v] - sum / static_cast<double>(nb.size()));
  } else {
    std::int64_t sum = 0;
    for (Node u : nb) sum += x[u];
    const auto deg = static_cast<std::int64_t>(nb.size());
    const std::int64_t num = deg * x[v] - sum;
    return ExactDeviation{num < 0 ? -num : num, deg};
  }
}

template <Fitness T>
struct WorstNodes {
  deviation_t<T> d{};
  std::vector<Node> argmax;  // sorted, every node attaining d
};

/// d(x) = max_v d_v(x) and every node attaining it. Ties are decided by exact
/// comparison (rational in discrete mode, floating-point equality otherwise).
template <Fitness T>
WorstNodes<T> max_nonconformity(std::span<const T> x, const Topology& topo) {
  WorstNodes<T> out;
  for (Node v = 0; v < topo.size(); ++v) {
    const auto dv = nonconformity<T>(x, topo, v);
    if (out.argmax.empty() || dv > out.d) {
      out.d = dv;
      out.argmax.assign(1, v);
    } else if (dv == out.d) {
      out.argmax.push_back(v);
    }
  }
  return out;
}

/// Uniformly random element of the argmax set. Consumes randomness only when
/// there is a tie.
template <Fitness T>
Node select_worst(const WorstNodes<T>& worst, Rng& rng) {
  if (worst.argmax.size() == 1) return worst.argmax.front();
  std::uniform_int_distribution<std::size_t> pick(0, worst.argmax.size() - 1);
  return worst.argmax[pick(rng)];
}

template <Fitness T>
Node select_worst(std::span<const T> x, const Topology& topo, Rng& rng) {
  return select_worst<T>(max_nonconformity<T>(x, topo), rng);
}

// ---------------------------------------------------------------------------
// Stepping

/// raw: always replace the worst node. frozen: once d = 0 the configuration
/// never changes again.
enum class StepMode { raw, frozen };

template <Fitness T>
struct StepRecord {
  std::size_t time = 0;
  Node replaced_node = 0;
  T old_value{};
  T new_value{};
  deviation_t<T> d_before{};
  deviation_t<T> d_after{};
  std::vector<Node> argmax_before;
  bool absorbed = false;  // frozen mode and d_before == 0; nothing changed
};

namespace detail {

template <Fitness T>
bool is_zero(const deviation_t<T>& d) {
  if constexpr (std::same_as<T, double>) {
    return d == 0.0;
  } else {
    return d.num == 0;
  }
}

/// One transition from a state whose worst nodes are already known. Returns
/// the record and the worst nodes of the new state.
template <Fitness T, class Draw>
std::pair<StepRecord<T>, WorstNodes<T>> step_from(std::vector<T>& x,
                                                  const Topology& topo,
                                                  WorstNodes<T> before, Draw& draw,
                                                  Rng& rng, StepMode mode,
                                                  std::size_t time) {
  StepRecord<T> rec;
  rec.time = time;
  rec.d_before = before.d;
  if (mode == StepMode::frozen && is_zero<T>(before.d)) {
    rec.absorbed = true;
    rec.replaced_node = before.argmax.front();
    rec.old_value = rec.new_value = x[rec.replaced_node];
    rec.d_after = before.d;
    rec.argmax_before = before.argmax;
    return {std::move(rec), std::move(before)};
  }
  const Node j = select_worst<T>(before, rng);
  rec.replaced_node = j;
  rec.old_value = x[j];
  rec.new_value = draw(rng);
  x[j] = rec.new_value;
  auto after = max_nonconformity<T>(std::span<const T>(x), topo);
  rec.d_after = after.d;
  rec.argmax_before = std::move(before.argmax);
  return {std::move(rec), std::move(after)};
}

}  // namespace detail

/// Replaces a uniformly chosen worst node of `x` by draw(rng), in place.
template <Fitness T, class Draw>
  requires std::invocable<Draw&, Rng&>
StepRecord<T> step(std::vector<T>& x, const Topology& topo, Draw&& draw, Rng& rng,
                   StepMode mode, std::size_t time = 0) {
  if (x.size() != topo.size()) {
    throw Error(Errc::invalid_configuration, "configuration length differs from node count");
  }
  auto worst = max_nonconformity<T>(std::span<const T>(x), topo);
  return detail::step_from<T>(x, topo, std::move(worst), draw, rng, mode, time).first;
}

template <Fitness T>
StepRecord<T> step(std::vector<T>& x, const Topology& topo, Replacement& law, Rng& rng,
                   StepMode mode, std::size_t time = 0) {
  return step<T>(x, topo, [&law](Rng& r) { return law.draw<T>(r); }, rng, mode, time);
}

// ---------------------------------------------------------------------------
// Runs

inline constexpr std::size_t kDefaultStepCap = 100'000'000;

struct MaxSteps {
  std::size_t steps = 0;
};
/// Stop at the first constant configuration (discrete laws only).
struct UntilAbsorbed {
  std::size_t step_cap = kDefaultStepCap;
};
/// Stop at the first state with d(x) < epsilon.
struct UntilDBelow {
  double epsilon = 0.0;
  std::size_t step_cap = kDefaultStepCap;
};
using StopRule = std::variant<MaxSteps, UntilAbsorbed, UntilDBelow>;

enum class StopReason { max_steps, absorbed, d_below, step_cap };

std::string to_string(StopReason reason);

template <Fitness T>
struct Trajectory {
  std::vector<T> initial;
  std::vector<StepRecord<T>> records;
  std::vector<T> final;
  std::uint64_t seed = 0;
  DistributionSpec distribution;
  std::string topology;
  StopReason stop_reason = StopReason::max_steps;
};

/// Throws invalid_configuration unless `x` has one value per node and every
/// value lies in the support of `law` ([0,1] for the continuous law).
template <Fitness T>
void validate_configuration(std::span<const T> x, const Topology& topo,
                            const DistributionSpec& law) {
  if (x.size() != topo.size()) {
    throw Error(Errc::invalid_configuration,
                "configuration has " + std::to_string(x.size()) + " values for " +
                    std::to_string(topo.size()) + " nodes");
  }
  if constexpr (std::same_as<T, double>) {
    if (law.is_discrete()) throw Error(Errc::invalid_configuration, "real values for a discrete law");
    for (double v : x) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(Errc::invalid_configuration, "fitness outside [0,1]: " + std::to_string(v));
      }
    }
  } else {
    if (!law.is_discrete()) throw Error(Errc::invalid_configuration, "integer values for the continuous law");
    for (auto v : x) {
      if (!law.contains(v)) {
        throw Error(Errc::invalid_configuration, "fitness outside the support: " + std::to_string(v));
      }
    }
  }
}

/// I.i.d. draws from the replacement law, one per node.
template <Fitness T>
std::vector<T> iid_configuration(std::size_t n, Replacement& law, Rng& rng) {
  std::vector<T> x(n);
  for (auto& v : x) v = law.draw<T>(rng);
  return x;
}

namespace detail {

template <Fitness T, class Draw, class OnStep>
StopReason drive(std::vector<T>& x, const Topology& topo, Draw& draw, Rng& rng,
                 const StopRule& stop, StepMode mode, OnStep&& on_step) {
  auto worst = max_nonconformity<T>(std::span<const T>(x), topo);
  std::size_t cap = 0;
  if (const auto* m = std::get_if<MaxSteps>(&stop)) cap = m->steps;
  if (const auto* a = std::get_if<UntilAbsorbed>(&stop)) cap = a->step_cap;
  if (const auto* e = std::get_if<UntilDBelow>(&stop)) cap = e->step_cap;

  for (std::size_t t = 0;; ++t) {
    if (std::holds_alternative<UntilAbsorbed>(stop) && is_zero<T>(worst.d)) {
      return StopReason::absorbed;
    }
    if (const auto* e = std::get_if<UntilDBelow>(&stop); e && to_double(worst.d) < e->epsilon) {
      return StopReason::d_below;
    }
    if (t >= cap) {
      return std::holds_alternative<MaxSteps>(stop) ? StopReason::max_steps : StopReason::step_cap;
    }
    auto [rec, after] = step_from<T>(x, topo, std::move(worst), draw, rng, mode, t);
    worst = std::move(after);
    on_step(std::move(rec));
  }
}

}  // namespace detail

/// Iterates `step` from `initial` until the stop rule fires and records every
/// transition. The RNG stream is derived from `seed` alone, so identical
/// arguments give bit-identical trajectories.
template <Fitness T>
Trajectory<T> run(std::vector<T> initial, const Topology& topo, const DistributionSpec& law,
                  const StopRule& stop, std::uint64_t seed, StepMode mode = StepMode::frozen) {
  if (std::holds_alternative<UntilAbsorbed>(stop) && !law.is_discrete()) {
    throw Error(Errc::invalid_stop_rule,
                "until-absorbed needs a discrete law; continuous runs are absorbed with probability 0");
  }
  validate_configuration<T>(initial, topo, law);

  Trajectory<T> tr;
  tr.initial = initial;
  tr.seed = seed;
  tr.distribution = law;
  tr.topology = topo.descriptor();

  Rng rng{seed};
  Replacement replacement{law};
  auto draw = [&replacement](Rng& r) { return replacement.draw<T>(r); };
  tr.stop_reason = detail::drive<T>(initial, topo, draw, rng, stop, mode,
                                    [&tr](StepRecord<T>&& r) { tr.records.push_back(std::move(r)); });
  tr.final = std::move(initial);
  return tr;
}

/// Non-recording variant of run() for bulk experiments; mutates `x` in place
/// and returns the number of steps taken with the reason for stopping.
template <Fitness T>
std::pair<std::size_t, StopReason> advance(std::vector<T>& x, const Topology& topo,
                                           Replacement& law, Rng& rng, const StopRule& stop,
                                           StepMode mode) {
  std::size_t steps = 0;
  auto draw = [&law](Rng& r) { return law.draw<T>(r); };
  const auto reason = detail::drive<T>(x, topo, draw, rng, stop, mode,
                                       [&steps](StepRecord<T>&&) { ++steps; });
  return {steps, reason};
}

/// Applies the records' (node, new value) pairs to `initial`.
template <Fitness T>
std::vector<T> replay(std::vector<T> initial, std::span<const StepRecord<T>> records) {
  for (const auto& r : records) initial.at(r.replaced_node) = r.new_value;
  return initial;
}

/// True iff every value is equal (d = 0 on a connected graph).
template <Fitness T>
bool is_constant(std::span<const T> x) {
  return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>{}) == x.end();
}

}  // namespace jante
