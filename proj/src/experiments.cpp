#include "jante/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "jante/continuous.hpp"
#include "jante/io.hpp"
#include "jante/stats.hpp"

namespace jante {

namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(const std::string& what) { throw Error(Errc::invalid_spec, what); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_number(const std::string& text, const std::string& what) {
  T v{};
  const auto* b = text.data();
  const auto* e = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (text.empty() || ec != std::errc{} || ptr != e) bad_spec("invalid " + what + ": \"" + text + "\"");
  return v;
}

std::string to_string(StepMode mode) { return mode == StepMode::raw ? "raw" : "frozen"; }

StepMode parse_mode(const std::string& text) {
  if (text == "raw") return StepMode::raw;
  if (text == "frozen") return StepMode::frozen;
  bad_spec("mode must be raw or frozen, got \"" + text + "\"");
}

json spec_json(const ExperimentSpec& s, bool with_output) {
  json j = {{"kind", to_string(s.kind)},
            {"topology", s.topology},
            {"distribution", s.distribution.descriptor()},
            {"runs", s.runs},
            {"stop", describe(s.stop)},
            {"mode", to_string(s.mode)},
            {"seed", s.seed},
            {"embedded_steps", s.embedded_steps},
            {"burn_in", s.burn_in},
            {"samples", s.samples}};
  if (with_output) {
    j["output"] = s.output ? json(s.output->string()) : json(nullptr);
    j["format"] = to_string(s.format);
  }
  return j;
}

std::string na_or(double v) { return std::isnan(v) ? "NA" : format_double(v); }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::absorb_hist: return "absorb_hist";
    case ExperimentKind::rate_estimate: return "rate_estimate";
    case ExperimentKind::verify_suite: return "verify_suite";
    case ExperimentKind::single_run: return "single_run";
  }
  return "unknown";
}

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "jsonl"; }

ExperimentKind parse_kind(const std::string& text) {
  for (auto k : {ExperimentKind::absorb_hist, ExperimentKind::rate_estimate, ExperimentKind::verify_suite,
                 ExperimentKind::single_run}) {
    if (text == to_string(k)) return k;
  }
  bad_spec("unknown experiment kind \"" + text + "\"");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "jsonl") return OutputFormat::jsonl;
  bad_spec("format must be csv or jsonl, got \"" + text + "\"");
}

std::string describe(const StopRule& stop) {
  if (const auto* m = std::get_if<MaxSteps>(&stop)) return "max_steps=" + std::to_string(m->steps);
  if (const auto* a = std::get_if<UntilAbsorbed>(&stop)) {
    return a->step_cap == kDefaultStepCap ? "until_absorbed" : "until_absorbed:" + std::to_string(a->step_cap);
  }
  const auto& e = std::get<UntilDBelow>(stop);
  std::string out = "d_below=" + format_double(e.epsilon);
  if (e.step_cap != kDefaultStepCap) out += ":" + std::to_string(e.step_cap);
  return out;
}

StopRule parse_stop_rule(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::size_t cap = colon == std::string::npos
                              ? kDefaultStepCap
                              : parse_number<std::size_t>(text.substr(colon + 1), "step cap");
  if (head.rfind("max_steps=", 0) == 0) {
    if (colon != std::string::npos) bad_spec("max_steps takes no cap");
    return MaxSteps{parse_number<std::size_t>(head.substr(10), "step count")};
  }
  if (head == "until_absorbed") return UntilAbsorbed{cap};
  if (head.rfind("d_below=", 0) == 0) {
    const double eps = parse_number<double>(head.substr(8), "epsilon");
    if (!(eps > 0.0)) bad_spec("d_below needs a positive epsilon");
    return UntilDBelow{eps, cap};
  }
  bad_spec("unknown stop rule \"" + text + "\"");
}

DistributionSpec parse_distribution(const std::string& text) {
  try {
    if (text == "uniform01") return DistributionSpec::uniform01();
    const auto colon = text.find(':');
    if (colon == std::string::npos) bad_spec("unknown distribution \"" + text + "\"");
    const std::string family = text.substr(0, colon);
    std::vector<std::int64_t> values;
    std::vector<double> probs;
    std::optional<std::int64_t> m;
    for (const auto& item : split(text.substr(colon + 1), ',')) {
      if (item.rfind("probs=", 0) == 0) {
        for (const auto& p : split(item.substr(6), ':')) probs.push_back(parse_number<double>(p, "probability"));
      } else if (family == "discrete" && item.rfind("M=", 0) == 0) {
        m = parse_number<std::int64_t>(item.substr(2), "support size M");
      } else if (family == "finite") {
        values.push_back(parse_number<std::int64_t>(item, "support value"));
      } else {
        bad_spec("unexpected distribution field \"" + item + "\"");
      }
    }
    if (family == "discrete") {
      if (!m) bad_spec("discrete distribution needs M=<int>");
      return DistributionSpec::discrete(*m, std::move(probs));
    }
    if (family == "finite") return DistributionSpec::finite(std::move(values), std::move(probs));
    bad_spec("unknown distribution family \"" + family + "\"");
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_spec) throw;
    bad_spec(e.what());
  }
}

void ExperimentSpec::validate() const {
  if (runs < 1) bad_spec("runs must be >= 1");
  if (!(burn_in >= 0.0 && burn_in < 1.0)) bad_spec("burn_in must lie in [0, 1)");
  if (kind == ExperimentKind::rate_estimate) {
    const auto points = embedded_steps + 1;
    const auto burned = static_cast<std::size_t>(std::floor(burn_in * static_cast<double>(points)));
    if (points < burned + 10) bad_spec("burn_in leaves fewer than 10 embedded points");
  }
  if (kind == ExperimentKind::verify_suite && samples < 1) bad_spec("samples must be >= 1");
}

std::string to_json(const ExperimentSpec& spec, int indent) { return spec_json(spec, true).dump(indent); }

ExperimentSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad_spec(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad_spec("spec must be a JSON object");
  static const char* known[] = {"kind", "topology", "distribution", "runs", "stop", "mode", "seed",
                                "embedded_steps", "burn_in", "samples", "output", "format"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) bad_spec("unknown spec field \"" + key + "\"");
  }
  ExperimentSpec s;
  try {
    if (j.contains("kind")) s.kind = parse_kind(j.at("kind").get<std::string>());
    if (j.contains("topology")) s.topology = j.at("topology").get<std::string>();
    if (j.contains("distribution")) s.distribution = parse_distribution(j.at("distribution").get<std::string>());
    if (j.contains("runs")) s.runs = j.at("runs").get<std::size_t>();
    if (j.contains("stop")) s.stop = parse_stop_rule(j.at("stop").get<std::string>());
    if (j.contains("mode")) s.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("embedded_steps")) s.embedded_steps = j.at("embedded_steps").get<std::size_t>();
    if (j.contains("burn_in")) s.burn_in = j.at("burn_in").get<double>();
    if (j.contains("samples")) s.samples = j.at("samples").get<std::size_t>();
    if (j.contains("output") && !j.at("output").is_null()) s.output = j.at("output").get<std::string>();
    if (j.contains("format")) s.format = parse_format(j.at("format").get<std::string>());
  } catch (const json::exception& e) {
    bad_spec(std::string("malformed spec field: ") + e.what());
  }
  s.validate();
  return s;
}

std::string spec_hash(const ExperimentSpec& spec) {
  const auto text = spec_json(spec, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Topology resolve_topology(const std::string& descriptor) {
  if (descriptor == "counterexample") return Topology::counterexample_graph();
  if (descriptor.rfind("cycle:", 0) == 0) {
    return Topology::cycle(parse_number<std::size_t>(descriptor.substr(6), "cycle size"));
  }
  if (descriptor.rfind("graph:", 0) == 0) {
    auto in = open_input(descriptor.substr(6));
    return read_edge_list(in);
  }
  bad_spec("topology must be cycle:N, graph:PATH or counterexample, got \"" + descriptor + "\"");
}

Summary summarize(std::vector<double> values, std::size_t runs) {
  Summary s;
  s.runs = runs;
  s.completed = values.size();
  if (values.empty()) return s;
  s.mean = stats::mean(values);
  s.median = stats::quantile(values, 0.5);
  s.q10 = stats::quantile(values, 0.1);
  s.q90 = stats::quantile(values, 0.9);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

std::vector<std::size_t> absorb_histogram(const std::vector<AbsorbRow>& rows, std::int64_t lo, std::int64_t hi) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& r : rows) {
    if (r.absorb_value && *r.absorb_value >= lo && *r.absorb_value <= hi) {
      ++counts[static_cast<std::size_t>(*r.absorb_value - lo)];
    }
  }
  return counts;
}

RateRow estimate_rate(std::span<const double> log_xi, double burn_in) {
  const double floor_log = std::log(1e-300);
  std::size_t end = 0;
  while (end < log_xi.size() && log_xi[end] >= floor_log) ++end;
  const auto burned = static_cast<std::size_t>(std::floor(burn_in * static_cast<double>(log_xi.size())));
  if (end < burned + 10) {
    throw Error(Errc::insufficient_data, "only " + std::to_string(end > burned ? end - burned : 0) +
                                             " embedded points after burn-in and truncation; need 10");
  }
  std::vector<double> s(end - burned);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = static_cast<double>(burned + k);
  const auto fit = stats::least_squares(s, log_xi.subspan(burned, end - burned));
  RateRow row;
  row.rho_hat = -fit.slope;
  row.n_embedded = fit.points;
  row.r_squared = fit.r_squared;
  return row;
}

RunReport run_absorb_hist(const ExperimentSpec& spec, Execution exec) {
  spec.validate();
  if (!spec.distribution.is_discrete()) bad_spec("absorb_hist needs a discrete distribution");
  if (!spec.distribution.is_equally_spaced()) bad_spec("absorb_hist needs an equally spaced support");
  if (spec.mode != StepMode::frozen) bad_spec("absorb_hist runs the frozen process");
  std::size_t cap = kDefaultStepCap;
  if (const auto* a = std::get_if<UntilAbsorbed>(&spec.stop)) cap = a->step_cap;
  else if (const auto* m = std::get_if<MaxSteps>(&spec.stop)) cap = m->steps;
  else bad_spec("absorb_hist stops at absorption or a step cap, not d_below");

  const auto topo = resolve_topology(spec.topology);
  RunReport report;
  report.kind = ExperimentKind::absorb_hist;
  report.absorb_rows = map_indexed(spec.runs, exec, [&](std::size_t i) {
    Rng rng = make_stream(spec.seed, i);
    Replacement law{spec.distribution};
    auto x = iid_configuration<std::int64_t>(topo.size(), law, rng);
    const auto [steps, reason] = advance<std::int64_t>(x, topo, law, rng, UntilAbsorbed{cap}, StepMode::frozen);
    AbsorbRow row;
    row.run_index = i;
    row.absorb_time = steps;
    if (reason == StopReason::absorbed) row.absorb_value = x.front();
    return row;
  });

  std::vector<double> times;
  for (const auto& r : report.absorb_rows) {
    if (r.absorb_value) times.push_back(static_cast<double>(r.absorb_time));
  }
  report.summary = summarize(std::move(times), spec.runs);
  report.histogram_origin = spec.distribution.min_value();
  const auto& values = spec.distribution.support().values;
  report.histogram.assign(values.size(), 0);
  for (const auto& r : report.absorb_rows) {
    if (r.absorb_value) ++report.histogram[spec.distribution.index_of(*r.absorb_value)];
  }
  return report;
}

RunReport run_rate_estimate(const ExperimentSpec& spec, Execution exec) {
  spec.validate();
  if (spec.distribution.is_discrete()) bad_spec("rate_estimate needs the uniform01 distribution");
  const auto topo = resolve_topology(spec.topology);
  if (!topo.is_cycle()) bad_spec("rate_estimate needs a cycle topology");
  if (topo.size() < 5) bad_spec("rate_estimate needs N >= 5, got " + std::to_string(topo.size()));

  RunReport report;
  report.kind = ExperimentKind::rate_estimate;
  report.rate_rows = map_indexed(spec.runs, exec, [&](std::size_t i) {
    Rng rng = make_stream(spec.seed, i);
    RealConfig x(topo.size());
    for (auto& v : x) v = uniform01(rng);
    const auto e = continuous::simulate_embedded(std::move(x), topo, rng, {spec.embedded_steps});
    std::vector<double> log_xi(e.points.size());
    for (std::size_t k = 0; k < e.points.size(); ++k) log_xi[k] = e.points[k].log_xi;
    auto row = estimate_rate(log_xi, spec.burn_in);
    row.run_index = i;
    return row;
  });
  std::vector<double> rates;
  for (const auto& r : report.rate_rows) rates.push_back(r.rho_hat);
  report.summary = summarize(std::move(rates), spec.runs);
  return report;
}

RunReport run_verify_suite(const ExperimentSpec& spec, Execution exec, DriftFormula drift) {
  spec.validate();
  RunReport report;
  report.kind = ExperimentKind::verify_suite;
  VerifyOptions options;
  options.seed = spec.seed;
  options.samples = spec.samples;
  options.execution = exec;
  options.drift = std::move(drift);
  report.verification = run_verification(options);
  return report;
}

RunReport run_single(const ExperimentSpec& spec, Execution exec) {
  spec.validate();
  const auto topo = resolve_topology(spec.topology);
  const bool discrete = spec.distribution.is_discrete();
  if (!discrete && std::holds_alternative<UntilAbsorbed>(spec.stop)) {
    bad_spec("until_absorbed needs a discrete distribution");
  }
  RunReport report;
  report.kind = ExperimentKind::single_run;
  report.single_rows = map_indexed(spec.runs, exec, [&](std::size_t i) {
    Rng rng = make_stream(spec.seed, i);
    Replacement law{spec.distribution};
    SingleRow row;
    row.run_index = i;
    row.final_h = std::nan("");
    auto go = [&]<class T>(std::vector<T> x) {
      const auto [steps, reason] = advance<T>(x, topo, law, rng, spec.stop, spec.mode);
      row.steps = steps;
      row.stop_reason = to_string(reason);
      row.final_d = to_double(max_nonconformity<T>(std::span<const T>(x), topo).d);
      if constexpr (std::same_as<T, double>) {
        if (topo.is_cycle() && topo.size() >= 5) row.final_h = continuous::lyapunov_h(x, topo);
      }
    };
    if (discrete) {
      go(iid_configuration<std::int64_t>(topo.size(), law, rng));
    } else {
      go(iid_configuration<double>(topo.size(), law, rng));
    }
    return row;
  });
  std::vector<double> steps;
  for (const auto& r : report.single_rows) steps.push_back(static_cast<double>(r.steps));
  report.summary = summarize(std::move(steps), spec.runs);
  return report;
}

RunReport run_experiment(const ExperimentSpec& spec, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  switch (spec.kind) {
    case ExperimentKind::absorb_hist: report = run_absorb_hist(spec, exec); break;
    case ExperimentKind::rate_estimate: report = run_rate_estimate(spec, exec); break;
    case ExperimentKind::verify_suite: report = run_verify_suite(spec, exec); break;
    case ExperimentKind::single_run: report = run_single(spec, exec); break;
  }
  report.seed = spec.seed;
  report.spec_hash = spec_hash(spec);
  report.wall_seconds = elapsed_since(start);
  return report;
}

void write_report(std::ostream& out, const RunReport& report, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "# kind=" << to_string(report.kind) << '\n'
        << "# spec_hash=" << report.spec_hash << '\n'
        << "# seed=" << report.seed << '\n';
    switch (report.kind) {
      case ExperimentKind::absorb_hist:
        out << "run_index,absorb_value,absorb_time\n";
        for (const auto& r : report.absorb_rows) {
          out << r.run_index << ',';
          if (r.absorb_value) {
            out << *r.absorb_value << ',' << r.absorb_time << '\n';
          } else {
            out << "NA,NA\n";
          }
        }
        break;
      case ExperimentKind::rate_estimate:
        out << "run_index,rho_hat,n_embedded,r_squared\n";
        for (const auto& r : report.rate_rows) {
          out << r.run_index << ',' << format_double(r.rho_hat) << ',' << r.n_embedded << ','
              << format_double(r.r_squared) << '\n';
        }
        break;
      case ExperimentKind::single_run:
        out << "run_index,steps,stop_reason,final_d,final_h\n";
        for (const auto& r : report.single_rows) {
          out << r.run_index << ',' << r.steps << ',' << r.stop_reason << ',' << format_double(r.final_d) << ','
              << na_or(r.final_h) << '\n';
        }
        break;
      case ExperimentKind::verify_suite:
        out << "name,samples,violations,max_violation,extreme,passed,detail\n";
        if (report.verification) {
          for (const auto& c : report.verification->checks) {
            out << c.name << ',' << c.samples << ',' << c.violations << ',' << format_double(c.max_violation) << ','
                << format_double(c.extreme) << ',' << (c.passed ? "true" : "false") << ',' << csv_quote(c.detail)
                << '\n';
          }
        }
        break;
    }
    return;
  }

  out << json{{"kind", to_string(report.kind)}, {"spec_hash", report.spec_hash}, {"seed", report.seed}}.dump()
      << '\n';
  switch (report.kind) {
    case ExperimentKind::absorb_hist:
      for (const auto& r : report.absorb_rows) {
        out << json{{"run_index", r.run_index},
                    {"absorb_value", r.absorb_value ? json(*r.absorb_value) : json(nullptr)},
                    {"absorb_time", r.absorb_value ? json(r.absorb_time) : json(nullptr)}}
                   .dump()
            << '\n';
      }
      break;
    case ExperimentKind::rate_estimate:
      for (const auto& r : report.rate_rows) {
        out << json{{"run_index", r.run_index},
                    {"rho_hat", r.rho_hat},
                    {"n_embedded", r.n_embedded},
                    {"r_squared", r.r_squared}}
                   .dump()
            << '\n';
      }
      break;
    case ExperimentKind::single_run:
      for (const auto& r : report.single_rows) {
        out << json{{"run_index", r.run_index},
                    {"steps", r.steps},
                    {"stop_reason", r.stop_reason},
                    {"final_d", r.final_d},
                    {"final_h", std::isnan(r.final_h) ? json(nullptr) : json(r.final_h)}}
                   .dump()
            << '\n';
      }
      break;
    case ExperimentKind::verify_suite:
      if (report.verification) {
        for (const auto& c : report.verification->checks) {
          out << json{{"name", c.name},
                      {"samples", c.samples},
                      {"violations", c.violations},
                      {"max_violation", c.max_violation},
                      {"extreme", c.extreme},
                      {"passed", c.passed},
                      {"detail", c.detail},
                      {"witness", c.witness}}
                     .dump()
              << '\n';
        }
      }
      break;
  }
}

void persist(const RunReport& report, const std::filesystem::path& path, OutputFormat format) {
  auto out = open_output(path);
  write_report(out, report, format);
  out.flush();
  if (!out) throw Error(Errc::io_failure, "failed writing " + path.string());
}

}  // namespace jante
