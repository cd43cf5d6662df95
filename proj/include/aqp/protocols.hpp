#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aqp/errors.hpp"
#include "aqp/evolution.hpp"
#include "aqp/gf2.hpp"
#include "aqp/hamiltonians.hpp"
#include "aqp/measurement.hpp"
#include "aqp/oracles.hpp"
#include "aqp/random.hpp"

namespace aqp {

enum class Problem { bv, simon };
enum class EvolutionPath { full, factored };

inline constexpr int kBvDefaultMaxRepeats = 64;
inline constexpr int kSimonRepeatCushion = 40;
/// The input register is still materialized on the factored path.
inline constexpr int kFactoredInputCap = 24;

struct RunConfig {
  Problem problem = Problem::bv;
  int n = 4;
  std::optional<Bits> a;  // drawn from the seed when absent
  double total_time = kDefaultRuntime;
  std::int64_t steps = kDefaultSteps;
  EvolutionPath path = EvolutionPath::factored;
  std::uint64_t seed = 0;
  std::optional<int> max_repeats;
  std::optional<std::uint64_t> scramble_seed;  // Simon only
  bool compare_factored = false;               // full path only

  Schedule schedule() const { return {total_time, steps}; }
  int repeat_limit() const {
    if (max_repeats) return *max_repeats;
    return problem == Problem::bv ? kBvDefaultMaxRepeats : n + kSimonRepeatCushion;
  }
};

struct RunReport {
  bool success = false;
  Bits planted_a = 0;
  std::optional<Bits> recovered_a;
  int quantum_runs = 0;
  int restarts = 0;
  int rows_collected = 0;
  int zero_rows = 0;
  double per_run_fidelity = 0.0;  // of the full final state against the ideal product target
  double branch_fidelity = 0.0;   // min_b |<b|phi_b>|^2
  std::optional<double> max_amplitude_deviation;
  double wall_ms = 0.0;
};

// Streams derived from the master seed.
inline constexpr std::uint64_t kShotStream = 0;
inline constexpr std::uint64_t kMaskStream = 1;

inline int full_path_max_n(Problem problem) {
  return problem == Problem::bv ? kDenseOperatorCap - 1 : (kDenseOperatorCap + 1) / 2;
}

/// Throws ConfigError for anything run_bv / run_simon cannot execute.
inline void validate(const RunConfig& cfg) {
  const int min_n = cfg.problem == Problem::bv ? 1 : 2;
  if (cfg.n < min_n) throw ConfigError("n must be at least " + std::to_string(min_n));
  if (cfg.path == EvolutionPath::full && cfg.n > full_path_max_n(cfg.problem)) {
    throw ConfigError("n = " + std::to_string(cfg.n) + " exceeds the dense full-path cap of " +
                      std::to_string(full_path_max_n(cfg.problem)));
  }
  if (cfg.n > kFactoredInputCap) {
    throw ConfigError("n = " + std::to_string(cfg.n) + " exceeds the input-register cap of " +
                      std::to_string(kFactoredInputCap));
  }
  if (cfg.a) {
    if (*cfg.a >> cfg.n) throw ConfigError("mask a does not fit in n bits");
    if (cfg.problem == Problem::simon && *cfg.a == 0) {
      throw ConfigError("Simon's promise requires a positive mask");
    }
  }
  if (!(cfg.total_time > 0.0) || !std::isfinite(cfg.total_time)) {
    throw ConfigError("runtime T must be positive");
  }
  if (cfg.steps < 1) throw ConfigError("steps must be at least 1");
  if (cfg.repeat_limit() < 1) throw ConfigError("max_repeats must be at least 1");
  if (cfg.scramble_seed && cfg.problem == Problem::simon && cfg.n > kMaxScrambleBits) {
    throw ConfigError("scrambled oracles are capped at n = " + std::to_string(kMaxScrambleBits));
  }
  if (cfg.compare_factored && cfg.path != EvolutionPath::full) {
    throw ConfigError("compare_factored requires the full path");
  }
}

/// Validates and fills in a drawn mask, so the result is fully explicit.
inline RunConfig resolve(RunConfig cfg) {
  validate(cfg);
  if (!cfg.a) {
    RandomSource rng = RandomSource(cfg.seed).derive(kMaskStream);
    const Bits span = Bits{1} << cfg.n;
    cfg.a = cfg.problem == Problem::bv ? rng.below(span) : 1 + rng.below(span - 1);
  }
  return cfg;
}

namespace detail {

inline double branch_fidelity(const BranchStates& phi) {
  return std::min(std::norm(phi.phi0[0]), std::norm(phi.phi1[1]));
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/**
 * Adiabatic Bernstein-Vazirani: prepare |+>|+>, sweep, x-measure the output
 * qubit; on |+> start over, on |-> read a from the input register.
 *
 * The sweep is deterministic, so the final state is computed once and each
 * repetition re-measures a fresh copy of it.
 */
inline RunReport run_bv(const RunConfig& config) {
  const detail::Stopwatch clock;
  const RunConfig cfg = resolve(config);
  const BvMask mask(cfg.n, *cfg.a);
  const Schedule sched = cfg.schedule();
  RandomSource rng = RandomSource(cfg.seed).derive(kShotStream);

  RunReport report;
  report.planted_a = mask.a;
  const BranchStates phi = evolve_branches(BlockConvention::bv, sched);
  report.branch_fidelity = detail::branch_fidelity(phi);

  std::optional<StateVector> final_state;
  if (cfg.path == EvolutionPath::full) {
    EvolutionResult evolved =
        evolve_full(bv_hamiltonian(mask), StateVector::plus(cfg.n, 1), sched, bv_target(mask));
    report.per_run_fidelity = evolved.fidelity_to_target;
    if (cfg.compare_factored) {
      report.max_amplitude_deviation =
          max_abs_diff(evolved.final_state, assemble_bv(mask, phi.phi0, phi.phi1));
    }
    final_state = std::move(evolved.final_state);
  } else {
    report.per_run_fidelity = bv_factored_fidelity(mask, phi.phi0, phi.phi1);
  }

  for (int run = 0; run < cfg.repeat_limit(); ++run) {
    ++report.quantum_runs;
    const BvReadout readout = final_state ? bv_readout(*final_state, rng)
                                          : bv_readout_factored(mask, phi.phi0, phi.phi1, rng);
    if (readout.restart) {
      ++report.restarts;
      continue;
    }
    report.recovered_a = readout.a_candidate;
    break;
  }
  report.rows_collected = report.quantum_runs;
  report.success = report.recovered_a == mask.a;
  report.wall_ms = clock.elapsed_ms();
  return report;
}

/**
 * Adiabatic Simon: per quantum run, z-measure the output register and
 * x-measure the input register to get a row x with x . a = 0. Stops once
 * the rows reach rank n - 1 and solves for a.
 */
inline RunReport run_simon(const RunConfig& config) {
  const detail::Stopwatch clock;
  const RunConfig cfg = resolve(config);
  const SimonOracle oracle = simon_build(cfg.n, *cfg.a, cfg.scramble_seed);
  const Schedule sched = cfg.schedule();
  RandomSource rng = RandomSource(cfg.seed).derive(kShotStream);

  RunReport report;
  report.planted_a = oracle.mask();
  const BranchStates phi = evolve_branches(BlockConvention::simon, sched);
  report.branch_fidelity = detail::branch_fidelity(phi);

  std::optional<StateVector> final_state;
  if (cfg.path == EvolutionPath::full) {
    EvolutionResult evolved = evolve_full(simon_hamiltonian(oracle),
                                          StateVector::plus(cfg.n, cfg.n - 1), sched,
                                          simon_target(oracle));
    report.per_run_fidelity = evolved.fidelity_to_target;
    if (cfg.compare_factored) {
      report.max_amplitude_deviation =
          max_abs_diff(evolved.final_state, assemble_simon(oracle, phi.phi0, phi.phi1));
    }
    final_state = std::move(evolved.final_state);
  } else {
    report.per_run_fidelity = simon_factored_fidelity(oracle, phi.phi0, phi.phi1);
  }

  Gf2Matrix rows(cfg.n);
  for (int run = 0; run < cfg.repeat_limit(); ++run) {
    ++report.quantum_runs;
    rows.add_row(final_state ? simon_sample(*final_state, rng)
                             : simon_sample_factored(oracle, phi.phi0, phi.phi1, rng));
    if (rank(rows) == cfg.n - 1) break;
  }
  report.rows_collected = static_cast<int>(rows.rows_recorded());
  report.zero_rows = static_cast<int>(rows.zero_rows());
  try {
    const MaskRecovery recovery = recover_mask(rows);
    report.recovered_a = recovery.a_candidate;
  } catch (const ContradictionError& e) {
    throw ProtocolError(std::string("run_simon: measurement rows are inconsistent: ") + e.what());
  }
  report.success = report.recovered_a == oracle.mask();
  report.wall_ms = clock.elapsed_ms();
  return report;
}

inline RunReport run(const RunConfig& cfg) {
  return cfg.problem == Problem::bv ? run_bv(cfg) : run_simon(cfg);
}

struct ClassicalResult {
  int queries = 0;
  Bits a = 0;
};

/// Probe f at w = 2^k; each answer is bit k of a.
inline ClassicalResult classical_bv(const BvMask& mask) {
  ClassicalResult result;
  for (int k = 0; k < mask.n; ++k) {
    result.a |= static_cast<Bits>(bv_eval(mask, Bits{1} << k)) << k;
    ++result.queries;
  }
  return result;
}

/// Query distinct random inputs until two share an output; their xor is a.
inline ClassicalResult classical_simon(const SimonOracle& oracle, RandomSource& rng) {
  const Bits inputs = Bits{1} << oracle.n();
  std::unordered_set<Bits> queried;
  std::unordered_map<Bits, Bits> seen;  // output -> input
  ClassicalResult result;
  while (true) {
    Bits w = rng.below(inputs);
    while (queried.contains(w)) w = rng.below(inputs);
    queried.insert(w);
    ++result.queries;
    const Bits g = oracle(w);
    if (const auto it = seen.find(g); it != seen.end()) {
      result.a = it->second ^ w;
      return result;
    }
    seen.emplace(g, w);
  }
}

enum class SweepAxis { n, time, steps };

struct SweepRow {
  double axis_value = 0.0;
  int trials = 0;
  double success_rate = 0.0;
  double mean_fidelity = 0.0;
  double mean_branch_fidelity = 0.0;
  double mean_rows = 0.0;  // quantum runs per trial
  double mean_restarts = 0.0;
  double wall_ms = 0.0;
};

/**
 * One aggregated row per axis value. Trial i runs with seed derived from
 * (base.seed, i); when base.a is unset every trial draws its own mask.
 */
inline std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                                   const RunConfig& base, int trials) {
  if (values.empty()) throw ConfigError("sweep: no axis values given");
  if (trials < 1) throw ConfigError("sweep: at least one trial per value required");
  std::vector<SweepRow> table;
  for (const double value : values) {
    const detail::Stopwatch clock;
    RunConfig cfg = base;
    switch (axis) {
      case SweepAxis::n:
        if (value != std::floor(value)) throw ConfigError("sweep: n values must be integers");
        cfg.n = static_cast<int>(value);
        break;
      case SweepAxis::time:
        cfg.total_time = value;
        break;
      case SweepAxis::steps:
        if (value != std::floor(value)) throw ConfigError("sweep: step counts must be integers");
        cfg.steps = static_cast<std::int64_t>(value);
        break;
    }
    SweepRow row;
    row.axis_value = value;
    row.trials = trials;
    for (int i = 0; i < trials; ++i) {
      RunConfig trial = cfg;
      trial.seed = RandomSource(base.seed).derive(static_cast<std::uint64_t>(i))();
      const RunReport report = run(trial);
      row.success_rate += report.success ? 1.0 : 0.0;
      row.mean_fidelity += report.per_run_fidelity;
      row.mean_branch_fidelity += report.branch_fidelity;
      row.mean_rows += report.quantum_runs;
      row.mean_restarts += report.restarts;
    }
    row.success_rate /= trials;
    row.mean_fidelity /= trials;
    row.mean_branch_fidelity /= trials;
    row.mean_rows /= trials;
    row.mean_restarts /= trials;
    row.wall_ms = clock.elapsed_ms();
    table.push_back(row);
  }
  return table;
}

}  // namespace aqp
