#include "jante/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace jante {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

namespace {

template <class T>
std::vector<T> read_values(std::istream& in) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    T v{};
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e) {
      throw Error(Errc::invalid_configuration,
                  "line " + std::to_string(line_no) + ": not a single value: \"" + line + "\"");
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(v)) throw Error(Errc::invalid_configuration, "line " + std::to_string(line_no) + ": non-finite value");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::invalid_configuration, "configuration file has no values");
  return out;
}

std::string text(std::int64_t v) { return std::to_string(v); }
std::string text(double v) { return format_double(v); }

}  // namespace

DiscreteConfig read_discrete_config(std::istream& in) { return read_values<std::int64_t>(in); }
RealConfig read_real_config(std::istream& in) { return read_values<double>(in); }

template <Fitness T>
void write_config(std::ostream& out, std::span<const T> x) {
  for (const T& v : x) out << text(v) << '\n';
}

template <Fitness T>
void write_trajectory_csv(std::ostream& out, const Trajectory<T>& tr) {
  out << "# topology=" << tr.topology << '\n'
      << "# distribution=" << tr.distribution.descriptor() << '\n'
      << "# seed=" << tr.seed << '\n'
      << "# stop_reason=" << to_string(tr.stop_reason) << '\n'
      << "# initial=";
  for (std::size_t i = 0; i < tr.initial.size(); ++i) out << (i ? " " : "") << text(tr.initial[i]);
  out << '\n' << "t,node,old_value,new_value,d_before,d_after,absorbed\n";
  for (const auto& r : tr.records) {
    out << r.time << ',' << r.replaced_node + 1 << ',' << text(r.old_value) << ',' << text(r.new_value)
        << ',' << format_double(to_double(r.d_before)) << ',' << format_double(to_double(r.d_after))
        << ',' << (r.absorbed ? 1 : 0) << '\n';
  }
}

template <Fitness T>
void write_trajectory_jsonl(std::ostream& out, const Trajectory<T>& tr) {
  nlohmann::json head = {{"topology", tr.topology},
                         {"distribution", tr.distribution.descriptor()},
                         {"seed", tr.seed},
                         {"stop_reason", to_string(tr.stop_reason)},
                         {"initial", tr.initial},
                         {"final", tr.final}};
  out << head.dump() << '\n';
  for (const auto& r : tr.records) {
    nlohmann::json row = {{"t", r.time},
                          {"node", r.replaced_node + 1},
                          {"old_value", r.old_value},
                          {"new_value", r.new_value},
                          {"d_before", to_double(r.d_before)},
                          {"d_after", to_double(r.d_after)},
                          {"absorbed", r.absorbed}};
    out << row.dump() << '\n';
  }
}

template void write_config<std::int64_t>(std::ostream&, std::span<const std::int64_t>);
template void write_config<double>(std::ostream&, std::span<const double>);
template void write_trajectory_csv<std::int64_t>(std::ostream&, const Trajectory<std::int64_t>&);
template void write_trajectory_csv<double>(std::ostream&, const Trajectory<double>&);
template void write_trajectory_jsonl<std::int64_t>(std::ostream&, const Trajectory<std::int64_t>&);
template void write_trajectory_jsonl<double>(std::ostream&, const Trajectory<double>&);

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace jante
