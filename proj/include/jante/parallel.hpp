#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <type_traits>
#include <vector>

namespace jante {

/// Every Monte-Carlo kernel in the library has a serial reference path and an
/// OpenMP path. Both produce identical results: work items own their RNG
/// stream and results are stored by index.
enum class Execution { serial, parallel };

/// Evaluates fn(i) for i in [0, count) and returns the results in index order.
/// The first exception thrown by any work item is rethrown on the caller.
template <class Fn>
auto map_indexed(std::size_t count, Execution exec, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<Result> out(count);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }

  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(jante_map_indexed_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Samples per chunk in chunked sweeps. Fixed so that the chunk -> RNG stream
/// assignment (and therefore every result) does not depend on thread count.
inline constexpr std::size_t kSweepChunk = 8192;

inline std::size_t chunk_count(std::size_t samples) {
  return (samples + kSweepChunk - 1) / kSweepChunk;
}

}  // namespace jante
