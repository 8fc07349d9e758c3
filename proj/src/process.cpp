#include "jante/process.hpp"

#include <numeric>

#include "jante/io.hpp"

namespace jante {

namespace {

std::vector<double> checked_probs(std::vector<double> probs, std::size_t size) {
  if (probs.empty()) return std::vector<double>(size, 1.0 / static_cast<double>(size));
  if (probs.size() != size) {
    throw Error(Errc::invalid_distribution, "expected " + std::to_string(size) + " probabilities, got " +
                                                std::to_string(probs.size()));
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error(Errc::invalid_distribution, "probabilities must be positive, got " + format_double(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::invalid_distribution, "probabilities sum to " + format_double(total));
  }
  return probs;
}

bool is_uniform(const std::vector<double>& probs) {
  return std::all_of(probs.begin(), probs.end(), [&](double p) { return p == probs.front(); });
}

}  // namespace

DistributionSpec DistributionSpec::discrete(std::int64_t m, std::vector<double> probs) {
  if (m < 1) throw Error(Errc::invalid_distribution, "support size M must be >= 1, got " + std::to_string(m));
  std::vector<std::int64_t> values(static_cast<std::size_t>(m));
  std::iota(values.begin(), values.end(), std::int64_t{1});
  return finite(std::move(values), std::move(probs));
}

DistributionSpec DistributionSpec::finite(std::vector<std::int64_t> values, std::vector<double> probs) {
  if (values.empty()) throw Error(Errc::invalid_distribution, "empty support");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw Error(Errc::invalid_distribution, "support values must be strictly increasing");
    }
  }
  auto p = checked_probs(std::move(probs), values.size());
  return DistributionSpec(FiniteSupport{std::move(values), std::move(p)});
}

const FiniteSupport& DistributionSpec::support() const {
  if (const auto* s = std::get_if<FiniteSupport>(&law_)) return *s;
  throw Error(Errc::invalid_distribution, "the continuous law has no finite support");
}

bool DistributionSpec::is_equally_spaced() const noexcept {
  const auto* s = std::get_if<FiniteSupport>(&law_);
  if (!s) return false;
  const auto& v = s->values;
  for (std::size_t i = 2; i < v.size(); ++i) {
    if (v[i] - v[i - 1] != v[1] - v[0]) return false;
  }
  return true;
}

bool DistributionSpec::is_unit_range() const noexcept {
  const auto* s = std::get_if<FiniteSupport>(&law_);
  return s && s->values.front() == 1 && is_equally_spaced() &&
         (s->values.size() == 1 || s->values[1] == 2);
}

bool DistributionSpec::contains(std::int64_t v) const {
  const auto& values = support().values;
  return std::binary_search(values.begin(), values.end(), v);
}

std::size_t DistributionSpec::index_of(std::int64_t v) const {
  const auto& values = support().values;
  const auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.end() || *it != v) {
    throw Error(Errc::invalid_configuration, "value " + std::to_string(v) + " not in the support");
  }
  return static_cast<std::size_t>(it - values.begin());
}

std::string DistributionSpec::descriptor() const {
  const auto* s = std::get_if<FiniteSupport>(&law_);
  if (!s) return "uniform01";
  std::string out;
  if (is_unit_range()) {
    out = "discrete:M=" + std::to_string(s->values.size());
  } else {
    out = "finite:";
    for (std::size_t i = 0; i < s->values.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s->values[i]);
    }
  }
  if (!is_uniform(s->probs)) {
    out += ",probs=";
    for (std::size_t i = 0; i < s->probs.size(); ++i) {
      if (i) out += ':';
      out += format_double(s->probs[i]);
    }
  }
  return out;
}

Replacement::Replacement(const DistributionSpec& spec) : discrete_(spec.is_discrete()) {
  if (discrete_) {
    const auto& s = spec.support();
    values_ = s.values;
    pick_ = std::discrete_distribution<std::size_t>(s.probs.begin(), s.probs.end());
  }
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::max_steps: return "max_steps";
    case StopReason::absorbed: return "absorbed";
    case StopReason::d_below: return "d_below";
    case StopReason::step_cap: return "step_cap";
  }
  return "unknown";
}

}  // namespace jante
