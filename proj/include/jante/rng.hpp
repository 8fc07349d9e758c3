#pragma once

#include <cstdint>
#include <random>

namespace jante {

using Rng = std::mt19937_64;

/// Stream for run (or chunk) `index` of an experiment seeded with `seed`.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng{seed ^ index};
}

/// Uniform on [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

}  // namespace jante
