// Command-line driver: simulation, experiments and verification.
//
// Exit status: 0 success, 1 a verification or property check failed,
// 2 usage error or invalid input.

#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jante/continuous.hpp"
#include "jante/discrete.hpp"
#include "jante/experiments.hpp"
#include "jante/io.hpp"
#include "jante/topology.hpp"

namespace {

using namespace jante;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::optional<std::size_t> cycle;
  std::optional<std::string> graph_file;
  std::optional<std::string> discrete;
  bool uniform = false;
  std::optional<std::string> steps;
  std::optional<std::uint64_t> seed;
  std::string mode = "frozen";
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::string init = "iid";
  std::optional<std::string> spec;
  std::size_t runs = 1000;
  std::size_t samples = 100'000;
  std::size_t embedded_steps = 2000;
  double burn_in = 0.1;
  bool serial = false;
};

void add_topology(CLI::App* sub, CommonFlags& f) {
  auto* c = sub->add_option("--cycle", f.cycle, "Cycle with N nodes");
  auto* g = sub->add_option("--graph-file", f.graph_file, "Edge list: \"N E\" then E lines \"u v\" (1-based)");
  c->excludes(g);
}

void add_law(CLI::App* sub, CommonFlags& f) {
  auto* d = sub->add_option("--discrete", f.discrete, "Support {1..M}: M=<int>[,probs=p1:...:pM]");
  auto* u = sub->add_flag("--uniform", f.uniform, "Uniform law on [0,1]");
  d->excludes(u);
}

void add_seed(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--seed", f.seed, "RNG seed (generated and printed when omitted)");
}

void add_output(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--out", f.out, "Output file (default: stdout)");
  sub->add_option("--format", f.format, "csv | jsonl");
}

std::uint64_t effective_seed(const CommonFlags& f) {
  std::uint64_t seed = 0;
  if (f.seed) {
    seed = *f.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::cerr << "seed=" << seed << '\n';
  return seed;
}

Topology load_topology(const CommonFlags& f) {
  if (f.cycle) return Topology::cycle(*f.cycle);
  if (f.graph_file) {
    auto in = open_input(*f.graph_file);
    auto topo = read_edge_list(in);
    const auto leaves = topo.leaves();
    if (!leaves.empty()) {
      std::cerr << "warning: " << leaves.size()
                << " node(s) of degree 1; the process may not converge on such graphs (first: node "
                << leaves.front() + 1 << ")\n";
    }
    return topo;
  }
  throw UsageError("one of --cycle or --graph-file is required");
}

std::string topology_descriptor(const CommonFlags& f) {
  if (f.cycle) return "cycle:" + std::to_string(*f.cycle);
  if (f.graph_file) return "graph:" + *f.graph_file;
  throw UsageError("one of --cycle or --graph-file is required");
}

DistributionSpec load_law(const CommonFlags& f) {
  if (f.discrete) return parse_distribution("discrete:" + *f.discrete);
  if (f.uniform) return DistributionSpec::uniform01();
  throw UsageError("one of --discrete M=<int> or --uniform is required");
}

StopRule load_stop(const std::optional<std::string>& steps, StopRule fallback) {
  if (!steps) return fallback;
  const std::string& s = *steps;
  if (s == "until-absorbed") return UntilAbsorbed{};
  if (s.rfind("d-below=", 0) == 0) return parse_stop_rule("d_below=" + s.substr(8));
  return parse_stop_rule("max_steps=" + s);
}

StepMode load_mode(const std::string& mode) {
  if (mode == "raw") return StepMode::raw;
  if (mode == "frozen") return StepMode::frozen;
  throw UsageError("--mode must be raw or frozen");
}

OutputFormat load_format(const std::optional<std::string>& format) {
  return format ? parse_format(*format) : OutputFormat::csv;
}

Execution load_execution(const CommonFlags& f) { return f.serial ? Execution::serial : Execution::parallel; }

template <class Write>
void emit(const std::optional<std::string>& out, Write&& write) {
  if (out) {
    auto file = open_output(*out);
    write(static_cast<std::ostream&>(file));
    file.flush();
    if (!file) throw Error(Errc::io_failure, "failed writing " + *out);
  } else {
    write(std::cout);
  }
}

template <Fitness T>
int simulate_typed(const CommonFlags& f, const Topology& topo, const DistributionSpec& law, std::uint64_t seed) {
  std::vector<T> x;
  if (f.init == "iid") {
    // The initial configuration uses its own stream so that a supplied file
    // with the same values reproduces the trajectory.
    Rng rng = make_stream(seed, 0x1217);
    Replacement r{law};
    x = iid_configuration<T>(topo.size(), r, rng);
  } else {
    auto in = open_input(f.init);
    if constexpr (std::same_as<T, double>) {
      x = read_real_config(in);
    } else {
      x = read_discrete_config(in);
    }
  }
  const auto stop = load_stop(f.steps, MaxSteps{1000});
  const auto tr = run<T>(std::move(x), topo, law, stop, seed, load_mode(f.mode));
  emit(f.out, [&](std::ostream& os) {
    if (load_format(f.format) == OutputFormat::csv) {
      write_trajectory_csv(os, tr);
    } else {
      write_trajectory_jsonl(os, tr);
    }
  });
  std::cerr << "steps=" << tr.records.size() << " stop_reason=" << to_string(tr.stop_reason) << '\n';
  return kOk;
}

int cmd_simulate(const CommonFlags& f) {
  const auto topo = load_topology(f);
  const auto law = load_law(f);
  const auto seed = effective_seed(f);
  return law.is_discrete() ? simulate_typed<std::int64_t>(f, topo, law, seed)
                           : simulate_typed<double>(f, topo, law, seed);
}

ExperimentSpec spec_from_file(const std::string& path, ExperimentKind expected) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto spec = spec_from_json(buf.str());
  std::cerr << "seed=" << spec.seed << '\n';
  if (spec.kind != expected) {
    throw UsageError("--spec describes a " + to_string(spec.kind) + " experiment, expected " + to_string(expected));
  }
  return spec;
}

void finish_spec(ExperimentSpec& spec, const CommonFlags& f) {
  if (f.out) spec.output = *f.out;
  if (f.format) spec.format = parse_format(*f.format);
}

int write_experiment(const ExperimentSpec& spec, const RunReport& report) {
  if (spec.output) {
    persist(report, *spec.output, spec.format);
  } else {
    write_report(std::cout, report, spec.format);
  }
  std::cerr << "spec_hash=" << report.spec_hash << " wall_seconds=" << format_double(report.wall_seconds) << '\n';
  return report.passed() ? kOk : kCheckFailed;
}

int cmd_absorb_hist(const CommonFlags& f) {
  ExperimentSpec spec;
  if (f.spec) {
    spec = spec_from_file(*f.spec, ExperimentKind::absorb_hist);
  } else {
    spec.kind = ExperimentKind::absorb_hist;
    spec.topology = topology_descriptor(f);
    spec.distribution = load_law(f);
    spec.runs = f.runs;
    spec.stop = load_stop(f.steps, UntilAbsorbed{});
    spec.mode = load_mode(f.mode);
    spec.seed = effective_seed(f);
  }
  if (f.graph_file) load_topology(f);  // surfaces the degree-1 warning
  finish_spec(spec, f);
  const auto report = run_experiment(spec, load_execution(f));
  std::cerr << "histogram (value: count):";
  for (std::size_t i = 0; i < report.histogram.size(); ++i) {
    std::cerr << ' ' << spec.distribution.support().values[i] << ':' << report.histogram[i];
  }
  std::cerr << "\nabsorbed=" << report.summary.completed << '/' << report.summary.runs
            << " mean_time=" << format_double(report.summary.mean) << '\n';
  return write_experiment(spec, report);
}

int cmd_rate(const CommonFlags& f) {
  ExperimentSpec spec;
  if (f.spec) {
    spec = spec_from_file(*f.spec, ExperimentKind::rate_estimate);
  } else {
    if (f.graph_file) throw UsageError("rate needs --cycle N");
    if (f.discrete) throw UsageError("rate uses the uniform law on [0,1]; --discrete is not allowed");
    if (!f.cycle) throw UsageError("rate needs --cycle N");
    if (*f.cycle < 5) throw UsageError("rate needs --cycle N with N >= 5, got " + std::to_string(*f.cycle));
    spec.kind = ExperimentKind::rate_estimate;
    spec.topology = topology_descriptor(f);
    spec.distribution = DistributionSpec::uniform01();
    spec.runs = f.runs;
    spec.embedded_steps = f.embedded_steps;
    spec.burn_in = f.burn_in;
    spec.mode = StepMode::raw;
    spec.stop = MaxSteps{f.embedded_steps};
    spec.seed = effective_seed(f);
  }
  finish_spec(spec, f);
  const auto report = run_experiment(spec, load_execution(f));
  std::cerr << "rho_hat median=" << format_double(report.summary.median) << " mean=" << format_double(report.summary.mean)
            << " q10=" << format_double(report.summary.q10) << " q90=" << format_double(report.summary.q90) << '\n';
  return write_experiment(spec, report);
}

int cmd_verify(const CommonFlags& f) {
  ExperimentSpec spec;
  if (f.spec) {
    spec = spec_from_file(*f.spec, ExperimentKind::verify_suite);
  } else {
    spec.kind = ExperimentKind::verify_suite;
    spec.samples = f.samples;
    spec.seed = effective_seed(f);
  }
  if (f.format) {
    finish_spec(spec, f);
    return write_experiment(spec, run_experiment(spec, load_execution(f)));
  }
  const auto report = run_experiment(spec, load_execution(f));
  emit(f.out, [&](std::ostream& os) { os << to_json(*report.verification) << '\n'; });
  for (const auto& c : report.verification->checks) {
    std::cerr << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
  }
  return report.passed() ? kOk : kCheckFailed;
}

int cmd_path(const CommonFlags& f) {
  if (f.init == "iid") throw UsageError("path needs --init PATH naming a configuration file");
  if (!f.discrete) throw UsageError("path needs --discrete M=<int>");
  const auto law = load_law(f);
  if (!law.is_unit_range()) throw UsageError("path needs the support {1,...,M}");
  auto in = open_input(f.init);
  const auto x = read_discrete_config(in);
  const auto topo = Topology::cycle(x.size());
  const auto m = law.max_value();
  const auto path = discrete::construct_absorbing_path(x, topo, m);
  emit(f.out, [&](std::ostream& os) {
    os << "# N=" << x.size() << " M=" << m << " T=" << path.length() << " bound=" << path.bound << '\n';
    discrete::write_path_csv(os, path);
  });
  std::cerr << "T=" << path.length() << " bound=" << path.bound << '\n';
  const bool ok = static_cast<std::int64_t>(path.length()) <= path.bound &&
                  discrete::is_absorbed(path.apply());
  return ok ? kOk : kCheckFailed;
}

int cmd_counterexample(const CommonFlags& f, const std::string& which, std::int64_t x, std::int64_t y) {
  const auto seed = effective_seed(f);
  const auto stop = load_stop(f.steps, MaxSteps{100});
  if (!std::holds_alternative<MaxSteps>(stop)) throw UsageError("counterexample needs --steps <int>");
  const bool stable = which == "stable";
  const auto topo = stable ? Topology::cycle(8) : Topology::counterexample_graph();
  const auto law = stable ? discrete::stable_family_law() : DistributionSpec::finite({0, 1});
  auto start = stable ? discrete::stable_family_member(x, y) : discrete::counterexample_start(x, y);
  const auto tr = run<std::int64_t>(start, topo, law, stop, seed, StepMode::raw);

  bool ok = true;
  auto state = tr.initial;
  for (const auto& r : tr.records) {
    state[r.replaced_node] = r.new_value;
    if (discrete::is_absorbed(state)) ok = false;
    if (stable && !discrete::in_stable_family(state)) ok = false;
    if (!stable && r.replaced_node != 1 && r.replaced_node != 2) ok = false;
  }
  emit(f.out, [&](std::ostream& os) {
    if (load_format(f.format) == OutputFormat::csv) {
      write_trajectory_csv(os, tr);
    } else {
      write_trajectory_jsonl(os, tr);
    }
  });
  std::cerr << (stable ? "stable family" : "six-node graph") << ": " << tr.records.size() << " steps, "
            << (ok ? "never absorbed" : "PROPERTY VIOLATED") << '\n';
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local Jante's law process: simulation, experiments and checks"};
  app.require_subcommand(1);
  CommonFlags f;

  auto* simulate = app.add_subcommand("simulate", "Run one trajectory and print its step log");
  add_topology(simulate, f);
  add_law(simulate, f);
  simulate->add_option("--steps", f.steps, "<int> | until-absorbed | d-below=<eps>");
  add_seed(simulate, f);
  simulate->add_option("--mode", f.mode, "raw | frozen");
  simulate->add_option("--init", f.init, "PATH (one value per line) | iid");
  add_output(simulate, f);

  auto* absorb = app.add_subcommand("absorb-hist", "Histogram of absorbing values over many runs");
  add_topology(absorb, f);
  add_law(absorb, f);
  absorb->add_option("--runs", f.runs, "Number of runs");
  absorb->add_option("--steps", f.steps, "until-absorbed | <int> step cap");
  add_seed(absorb, f);
  absorb->add_option("--mode", f.mode, "frozen");
  absorb->add_option("--spec", f.spec, "Experiment spec JSON (replaces the job flags)");
  absorb->add_flag("--serial", f.serial, "Run the serial reference path");
  add_output(absorb, f);

  auto* rate = app.add_subcommand("rate", "Estimate the exponential decay rate of xi");
  add_topology(rate, f);
  add_law(rate, f);
  rate->add_option("--runs", f.runs, "Number of runs");
  rate->add_option("--embedded-steps", f.embedded_steps, "Embedded steps per run");
  rate->add_option("--burn-in", f.burn_in, "Fraction of embedded points dropped");
  add_seed(rate, f);
  rate->add_option("--spec", f.spec, "Experiment spec JSON (replaces the job flags)");
  rate->add_flag("--serial", f.serial, "Run the serial reference path");
  add_output(rate, f);

  auto* verify = app.add_subcommand("verify", "Run every property check; JSON report");
  verify->add_option("--samples", f.samples, "Base sample size");
  add_seed(verify, f);
  verify->add_option("--spec", f.spec, "Experiment spec JSON (replaces the job flags)");
  verify->add_flag("--serial", f.serial, "Run the serial reference path");
  add_output(verify, f);

  auto* path = app.add_subcommand("path", "Print an explicit absorbing path and its length");
  path->add_option("--init", f.init, "Configuration file, one value per line")->required();
  path->add_option("--discrete", f.discrete, "M=<int>")->required();
  path->add_option("--out", f.out, "Output file (default: stdout)");

  std::string which = "stable";
  std::int64_t cx = 0;
  std::int64_t cy = 6;
  auto* counter = app.add_subcommand("counterexample", "Demonstrate the non-absorbing examples");
  counter->add_option("--which", which, "stable (8-cycle, support {0,1,5,6}) | graph (six-node graph)")
      ->check(CLI::IsMember({"stable", "graph"}));
  counter->add_option("--x", cx, "First free value");
  counter->add_option("--y", cy, "Second free value");
  counter->add_option("--steps", f.steps, "Number of raw steps");
  add_seed(counter, f);
  add_output(counter, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(f);
    if (*absorb) return cmd_absorb_hist(f);
    if (*rate) return cmd_rate(f);
    if (*verify) return cmd_verify(f);
    if (*path) return cmd_path(f);
    if (*counter) {
      if (which == "graph" && !counter->count("--y")) cy = 0;
      return cmd_counterexample(f, which, cx, cy);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == Errc::verification_failure || e.code() == Errc::nontermination ? kCheckFailed : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
