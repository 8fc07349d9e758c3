#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <iosfwd>
#include <string>
#include <vector>

#include "jante/process.hpp"

namespace jante {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Configuration file: one value per line (blank lines and '#' comments
/// ignored). Throws invalid_configuration on malformed input.
DiscreteConfig read_discrete_config(std::istream& in);
RealConfig read_real_config(std::istream& in);

template <Fitness T>
void write_config(std::ostream& out, std::span<const T> x);

/// Trajectory CSV: "# key=value" provenance lines, then
/// t,node,old_value,new_value,d_before,d_after,absorbed with 1-based nodes.
template <Fitness T>
void write_trajectory_csv(std::ostream& out, const Trajectory<T>& tr);

/// One JSON object per step, preceded by a header object.
template <Fitness T>
void write_trajectory_jsonl(std::ostream& out, const Trajectory<T>& tr);

/// Opens `path` for writing; io_failure names the path on error.
std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace jante
