#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aqp/aqp.hpp"

namespace aqp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitProtocolFailure = 2;

inline constexpr const char* kSeedEnv = "ADIABATIC_SIM_SEED";

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    return parse_mask(env);
  }
  return 0;
}

// Options shared by the bv and simon subcommands.
struct RunOptions {
  int n = 0;
  std::string a;
  double time = kDefaultRuntime;
  std::int64_t steps = kDefaultSteps;
  std::string path = "factored";
  std::uint64_t seed = 0;
  std::optional<int> max_repeats;
  std::string scramble_seed;
  bool compare_factored = false;
  std::string out;
  std::string config;
};

inline void add_run_options(CLI::App& cmd, RunOptions& opts, bool simon) {
  cmd.add_option("--n", opts.n, "Number of input bits");
  cmd.add_option("--a", opts.a, "Hidden mask (decimal, 0x hex or 0b binary); drawn from the seed if omitted");
  cmd.add_option("--time", opts.time, "Sweep runtime T")->check(CLI::PositiveNumber);
  cmd.add_option("--steps", opts.steps, "Integrator steps N")->check(CLI::PositiveNumber);
  cmd.add_option("--path", opts.path, "Evolution path")->check(CLI::IsMember({"full", "factored"}));
  cmd.add_option("--seed", opts.seed, "Master seed (default: $ADIABATIC_SIM_SEED or 0)");
  cmd.add_option("--max-repeats", opts.max_repeats, "Quantum-run budget");
  cmd.add_option("--out", opts.out, "Write the JSON record here instead of stdout");
  cmd.add_option("--config", opts.config, "Replay the config block of a previous JSON record");
  if (simon) {
    cmd.add_option("--scramble-seed", opts.scramble_seed, "Seed for relabeling oracle outputs");
    cmd.add_flag("--compare-factored", opts.compare_factored,
                 "With --path full, report the max amplitude deviation from the factored state");
  }
}

inline RunConfig to_config(const RunOptions& opts, Problem problem) {
  RunConfig cfg;
  if (!opts.config.empty()) {
    std::ifstream in(opts.config);
    if (!in) throw ConfigError("cannot open config file " + opts.config);
    const json doc = json::parse(in);
    cfg = (doc.contains("config") ? doc.at("config") : doc).get<RunConfig>();
    if (cfg.problem != problem) throw ConfigError("config file is for a different problem");
    return cfg;
  }
  if (opts.n == 0) throw ConfigError("--n is required");
  cfg.problem = problem;
  cfg.n = opts.n;
  if (!opts.a.empty()) cfg.a = parse_mask(opts.a);
  cfg.total_time = opts.time;
  cfg.steps = opts.steps;
  cfg.path = opts.path == "full" ? EvolutionPath::full : EvolutionPath::factored;
  cfg.seed = opts.seed;
  cfg.max_repeats = opts.max_repeats;
  if (!opts.scramble_seed.empty()) cfg.scramble_seed = parse_mask(opts.scramble_seed);
  cfg.compare_factored = opts.compare_factored;
  return cfg;
}

inline void emit(const std::string& payload, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << payload << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write " + path);
  file << payload << '\n';
}

inline int run_protocol(const RunOptions& opts, Problem problem, std::ostream& out,
                        std::ostream& err) {
  const RunConfig cfg = resolve(to_config(opts, problem));
  const RunReport report = run(cfg);
  emit(json(make_record(cfg, report)).dump(2), opts.out, out);
  if (!report.success) {
    err << "protocol failed: mask not recovered within " << cfg.repeat_limit() << " runs\n";
    return kExitProtocolFailure;
  }
  return kExitOk;
}

struct SweepOptions {
  std::string axis;
  std::string values;
  std::string problem = "bv";
  int n = 4;
  std::string a;
  double time = kDefaultRuntime;
  std::int64_t steps = kDefaultSteps;
  std::string path = "factored";
  std::uint64_t seed = 0;
  int trials = 10;
  std::string format = "csv";
  std::string out;
};

inline std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--values: cannot parse '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("--values: cannot parse '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("--values must list at least one value");
  return values;
}

inline int run_sweep(const SweepOptions& opts, std::ostream& out) {
  RunConfig base;
  base.problem = opts.problem == "bv" ? Problem::bv : Problem::simon;
  base.n = opts.n;
  if (!opts.a.empty()) base.a = parse_mask(opts.a);
  base.total_time = opts.time;
  base.steps = opts.steps;
  base.path = opts.path == "full" ? EvolutionPath::full : EvolutionPath::factored;
  base.seed = opts.seed;
  const SweepAxis axis = opts.axis == "n"   ? SweepAxis::n
                         : opts.axis == "T" ? SweepAxis::time
                                            : SweepAxis::steps;
  const auto table = sweep(axis, parse_values(opts.values), base, opts.trials);
  std::ostringstream payload;
  if (opts.format == "json") {
    payload << json{{"schema_version", kSchemaVersion}, {"axis", opts.axis}, {"base", base},
                    {"trials", opts.trials}, {"rows", table}}
                   .dump(2);
  } else {
    write_sweep_csv(payload, table);
  }
  std::string text = payload.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(text, opts.out, out);
  return kExitOk;
}

struct GapOptions {
  std::string problem = "bv";
  int n = 2;
  int grid = 201;
  bool two_level = false;
  std::string format = "csv";
};

inline int run_gap(const GapOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.grid < 3) throw ConfigError("--grid must be at least 3");
  GapScan scan;
  double analytic_deviation = 0.0;
  if (opts.two_level) {
    for (int i = 0; i < opts.grid; ++i) {
      const double s = static_cast<double>(i) / (opts.grid - 1);
      const double g = gap({0, BlockConvention::bv}, s);
      analytic_deviation =
          std::max(analytic_deviation, std::abs(g - std::sqrt((1 - s) * (1 - s) + s * s)));
      scan.samples.push_back({s, g});
      if (g < scan.gap_min) {
        scan.gap_min = g;
        scan.s_min = s;
      }
    }
  } else if (opts.problem == "bv") {
    scan = min_gap_scan(bv_hamiltonian(BvMask(opts.n, (Bits{1} << opts.n) - 1)), opts.grid);
  } else {
    scan = min_gap_scan(simon_hamiltonian(simon_build(opts.n, Bits{1})), opts.grid);
  }

  if (opts.format == "json") {
    json rows = json::array();
    for (const auto& sample : scan.samples) rows.push_back({{"s", sample.s}, {"gap", sample.gap}});
    json doc{{"schema_version", kSchemaVersion},
             {"problem", opts.two_level ? "two-level" : opts.problem},
             {"grid", opts.grid},
             {"s_min", scan.s_min},
             {"gap_min", scan.gap_min},
             {"rows", rows}};
    if (opts.two_level) doc["max_analytic_deviation"] = analytic_deviation;
    else doc["n"] = opts.n;
    out << doc.dump(2) << '\n';
  } else {
    std::ostringstream text;
    text.precision(17);
    text << "s,gap\n";
    for (const auto& sample : scan.samples) text << sample.s << ',' << sample.gap << '\n';
    out << text.str();
  }
  err << "min gap " << scan.gap_min << " at s = " << scan.s_min << '\n';
  return kExitOk;
}

struct VerifyOptions {
  int n = 0;
  std::string a;
  std::string scramble_seed;
};

inline int run_verify(const VerifyOptions& opts, std::ostream& out) {
  if (opts.a.empty()) throw ConfigError("--a is required");
  std::optional<std::uint64_t> scramble;
  if (!opts.scramble_seed.empty()) scramble = parse_mask(opts.scramble_seed);
  const SimonOracle oracle = simon_build(opts.n, parse_mask(opts.a), scramble);
  const PromiseReport report = verify_promise(oracle);
  json doc{{"schema_version", kSchemaVersion}, {"oracle", oracle_spec(oracle)},
           {"holds", report.holds}};
  doc["witness"] = report.witness ? json::array({report.witness->first, report.witness->second})
                                  : json(nullptr);
  out << doc.dump(2) << '\n';
  return report.holds ? kExitOk : kExitProtocolFailure;
}

/// Entry point; args excludes the program name. Payloads go to out, diagnostics to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adiabatic Bernstein-Vazirani and Simon simulator", "aqpsim"};
  app.require_subcommand(1);

  RunOptions bv_opts;
  RunOptions simon_opts;
  SweepOptions sweep_opts;
  GapOptions gap_opts;
  VerifyOptions verify_opts;
  try {
    bv_opts.seed = simon_opts.seed = sweep_opts.seed = default_seed();
  } catch (const Error& e) {
    err << kSeedEnv << ": " << e.what() << '\n';
    return kExitUsage;
  }

  auto* bv_cmd = app.add_subcommand("bv", "Adiabatic Bernstein-Vazirani run (JSON record)");
  add_run_options(*bv_cmd, bv_opts, false);
  auto* simon_cmd = app.add_subcommand("simon", "Adiabatic Simon run (JSON record)");
  add_run_options(*simon_cmd, simon_opts, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "Aggregate trials over n, T or steps (CSV)");
  sweep_cmd->add_option("--axis", sweep_opts.axis, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"n", "T", "steps"}));
  sweep_cmd->add_option("--values", sweep_opts.values, "Comma-separated axis values")->required();
  sweep_cmd->add_option("--problem", sweep_opts.problem)->check(CLI::IsMember({"bv", "simon"}));
  sweep_cmd->add_option("--n", sweep_opts.n);
  sweep_cmd->add_option("--a", sweep_opts.a);
  sweep_cmd->add_option("--time", sweep_opts.time)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--steps", sweep_opts.steps)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--path", sweep_opts.path)->check(CLI::IsMember({"full", "factored"}));
  sweep_cmd->add_option("--seed", sweep_opts.seed);
  sweep_cmd->add_option("--trials", sweep_opts.trials)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--format", sweep_opts.format)->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", sweep_opts.out);

  auto* gap_cmd = app.add_subcommand("gap", "Minimum spectral gap scan");
  gap_cmd->add_option("--problem", gap_opts.problem)->check(CLI::IsMember({"bv", "simon"}));
  gap_cmd->add_option("--n", gap_opts.n);
  gap_cmd->add_option("--grid", gap_opts.grid);
  gap_cmd->add_flag("--two-level", gap_opts.two_level, "Scan the single-qubit block instead");
  gap_cmd->add_option("--format", gap_opts.format)->check(CLI::IsMember({"csv", "json"}));

  auto* verify_cmd = app.add_subcommand("verify", "Exhaustively check a Simon oracle's promise");
  verify_cmd->add_option("--n", verify_opts.n)->required();
  verify_cmd->add_option("--a", verify_opts.a)->required();
  verify_cmd->add_option("--scramble-seed", verify_opts.scramble_seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*bv_cmd) return run_protocol(bv_opts, Problem::bv, out, err);
    if (*simon_cmd) return run_protocol(simon_opts, Problem::simon, out, err);
    if (*sweep_cmd) return run_sweep(sweep_opts, out);
    if (*gap_cmd) return run_gap(gap_opts, out, err);
    if (*verify_cmd) return run_verify(verify_opts, out);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PromiseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "usage error: malformed record: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ProtocolError& e) {
    err << "protocol error: " << e.what() << '\n';
    return kExitProtocolFailure;
  }
  return kExitUsage;
}

}  // namespace aqp::cli
