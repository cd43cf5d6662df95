#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "aqp/protocols.hpp"
#include "support.hpp"

namespace aqp {
namespace {

RunConfig bv_config(int n, std::optional<Bits> a, std::uint64_t seed) {
  RunConfig cfg;
  cfg.problem = Problem::bv;
  cfg.n = n;
  cfg.a = a;
  cfg.seed = seed;
  return cfg;
}

RunConfig simon_config(int n, std::optional<Bits> a, std::uint64_t seed) {
  RunConfig cfg = bv_config(n, a, seed);
  cfg.problem = Problem::simon;
  return cfg;
}

TEST(RunBv, RecoversEightBitMask) {
  const RunReport r = run_bv(bv_config(8, 0b10110011, 1));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.recovered_a, std::optional<Bits>(0b10110011));
  EXPECT_EQ(r.quantum_runs, r.restarts + 1);
  EXPECT_GE(r.per_run_fidelity, 0.999);
}

TEST(RunBv, FullPathAgreesWithFactored) {
  RunConfig cfg = bv_config(3, 5, 4);
  cfg.path = EvolutionPath::full;
  cfg.compare_factored = true;
  const RunReport full = run_bv(cfg);
  ASSERT_TRUE(full.max_amplitude_deviation.has_value());
  EXPECT_LE(*full.max_amplitude_deviation, 1e-8);
  cfg.path = EvolutionPath::factored;
  cfg.compare_factored = false;
  const RunReport factored = run_bv(cfg);
  EXPECT_NEAR(full.per_run_fidelity, factored.per_run_fidelity, 1e-8);
  EXPECT_EQ(full.quantum_runs, factored.quantum_runs);
  EXPECT_EQ(full.recovered_a, factored.recovered_a);
}

TEST(RunBv, ZeroMask) {
  const RunReport r = run_bv(bv_config(5, 0, 3));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.recovered_a, std::optional<Bits>(0));
}

TEST(RunBv, MeanRunsIsTwoAndFailureRateMatches) {
  double runs = 0.0;
  int failures = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    RunConfig cfg = bv_config(4, 0b1011, static_cast<std::uint64_t>(i));
    cfg.max_repeats = 10;
    const RunReport r = run_bv(cfg);
    runs += r.quantum_runs;
    failures += !r.success;
    if (r.success) ASSERT_EQ(r.recovered_a, std::optional<Bits>(0b1011));
  }
  EXPECT_LE(static_cast<double>(failures) / trials, 0.004);
  // Unlimited-ish budget: mean of a geometric(1/2) is 2.
  double mean = 0.0;
  for (int i = 0; i < trials; ++i) mean += run_bv(bv_config(4, 0b1011, 50000 + static_cast<std::uint64_t>(i))).quantum_runs;
  EXPECT_NEAR(mean / trials, 2.0, 0.05);
  (void)runs;
}

TEST(RunBv, DrawsMaskFromSeed) {
  const RunReport a = run_bv(bv_config(8, std::nullopt, 9));
  const RunReport b = run_bv(bv_config(8, std::nullopt, 9));
  EXPECT_EQ(a.planted_a, b.planted_a);
  EXPECT_TRUE(a.success);
  EXPECT_EQ(resolve(bv_config(8, std::nullopt, 9)).a, std::optional<Bits>(a.planted_a));
}

TEST(RunBv, Determinism) {
  const RunReport a = run_bv(bv_config(6, 0b101010, 123));
  const RunReport b = run_bv(bv_config(6, 0b101010, 123));
  EXPECT_EQ(a.quantum_runs, b.quantum_runs);
  EXPECT_EQ(a.restarts, b.restarts);
  EXPECT_EQ(a.recovered_a, b.recovered_a);
  EXPECT_EQ(a.per_run_fidelity, b.per_run_fidelity);
}

TEST(Validate, RejectsBadConfigs) {
  RunConfig big = bv_config(40, std::nullopt, 0);
  big.path = EvolutionPath::full;
  EXPECT_THROW(validate(big), ConfigError);
  EXPECT_THROW(validate(simon_config(6, 0, 0)), ConfigError);
  EXPECT_THROW(validate(bv_config(3, 9, 0)), ConfigError);
  RunConfig t = bv_config(3, 1, 0);
  t.total_time = 0;
  EXPECT_THROW(validate(t), ConfigError);
  RunConfig full_simon = simon_config(7, 1, 0);
  full_simon.path = EvolutionPath::full;
  EXPECT_THROW(validate(full_simon), ConfigError);
}

TEST(RunSimon, RecoversSixBitMask) {
  const RunReport r = run_simon(simon_config(6, 0b101001, 3));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.recovered_a, std::optional<Bits>(0b101001));
  EXPECT_LE(r.rows_collected, 26);
  EXPECT_EQ(r.rows_collected, r.quantum_runs);
}

TEST(RunSimon, FootnoteBoundHoldsForMostTrials) {
  int within = 0;
  for (int i = 0; i < 1000; ++i) {
    const RunReport r = run_simon(simon_config(6, 0b101001, static_cast<std::uint64_t>(i)));
    ASSERT_TRUE(r.success);
    within += r.rows_collected <= 6 + 20;
  }
  EXPECT_GE(within / 1000.0, 0.95);
}

TEST(RunSimon, FullPathAndScrambledOracle) {
  RunConfig cfg = simon_config(3, 0b110, 2);
  cfg.path = EvolutionPath::full;
  cfg.compare_factored = true;
  cfg.scramble_seed = 55;
  const RunReport r = run_simon(cfg);
  EXPECT_TRUE(r.success);
  ASSERT_TRUE(r.max_amplitude_deviation.has_value());
  EXPECT_LE(*r.max_amplitude_deviation, 1e-8);
}

TEST(RunSimon, ExhaustedBudgetIsAFailureReport) {
  RunConfig cfg = simon_config(8, 0b11, 1);
  cfg.max_repeats = 1;
  const RunReport r = run_simon(cfg);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.recovered_a.has_value());
  EXPECT_EQ(r.quantum_runs, 1);
}

TEST(ClassicalBv, ProbesPowersOfTwo) {
  const ClassicalResult r = classical_bv(BvMask(5, 19));
  EXPECT_EQ(r.queries, 5);
  EXPECT_EQ(r.a, 19u);
  const ClassicalResult z = classical_bv(BvMask(1, 0));
  EXPECT_EQ(z.queries, 1);
  EXPECT_EQ(z.a, 0u);
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(classical_bv(BvMask(n, (Bits{1} << n) - 1)).queries, n);
}

TEST(ClassicalSimon, PigeonholeAndCorrectness) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomSource rng(seed);
    const ClassicalResult r = classical_simon(simon_build(2, 3), rng);
    EXPECT_LE(r.queries, 3);
    EXPECT_EQ(r.a, 3u);
  }
  RandomSource rng(1);
  for (int n = 3; n <= 10; ++n) {
    const SimonOracle g = simon_build(n, (Bits{1} << n) - 3, 5);
    EXPECT_EQ(classical_simon(g, rng).a, g.mask());
  }
}

TEST(Sweep, FidelityIdenticalAcrossN) {
  RunConfig base = bv_config(2, std::nullopt, 7);
  const auto rows = sweep(SweepAxis::n, {2, 3, 4, 5, 6, 7, 8}, base, 3);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.mean_branch_fidelity, rows.front().mean_branch_fidelity, 1e-12);
    EXPECT_EQ(row.success_rate, 1.0);
  }
}

TEST(Sweep, FidelityIncreasesWithRuntime) {
  RunConfig base = bv_config(4, std::nullopt, 1);
  base.steps = 5000;
  // Not monotone on a fine grid (finite-time oscillations), so use a coarse one.
  const auto rows = sweep(SweepAxis::time, {1, 5, 50}, base, 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].mean_branch_fidelity, rows[i - 1].mean_branch_fidelity);
  }
  EXPECT_GE(rows.back().mean_branch_fidelity, 0.999);
}

TEST(Sweep, DeterministicAndValidated) {
  RunConfig base = simon_config(4, std::nullopt, 2);
  const auto a = sweep(SweepAxis::n, {3, 4}, base, 5);
  const auto b = sweep(SweepAxis::n, {3, 4}, base, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_rows, b[i].mean_rows);
    EXPECT_EQ(a[i].mean_fidelity, b[i].mean_fidelity);
  }
  EXPECT_THROW(sweep(SweepAxis::n, {}, base, 5), ConfigError);
}

}  // namespace
}  // namespace aqp
