#include <gtest/gtest.h>

#include "aqp/evolution.hpp"
#include "support.hpp"

namespace aqp {
namespace {

TEST(Schedule, Validation) {
  EXPECT_THROW((Schedule{0.0, 10}).validate(), DomainError);
  EXPECT_THROW((Schedule{1.0, 0}).validate(), DomainError);
  EXPECT_NO_THROW((Schedule{1.0, 1}).validate());
  EXPECT_DOUBLE_EQ((Schedule{10.0, 4}).midpoint(0), 0.125);
}

TEST(EvolveFull, FrozenDriverLeavesGroundStateUntouched) {
  // problem == driver, so H(s) = H_d at every s; |+>|+> is its zero eigenvector.
  const InterpolatedHamiltonian frozen{bv_driver(2), bv_driver(2), 2, 1};
  const StateVector psi0 = StateVector::plus(2, 1);
  const EvolutionResult r = evolve_full(frozen, psi0, {5.0, 100});
  EXPECT_LE(max_abs_diff(r.final_state, psi0), 1e-13);
  EXPECT_LE(r.norm_drift, 1e-12);
}

TEST(EvolveFull, AdiabaticBvReachesTarget) {
  const BvMask mask(2, 2);
  const EvolutionResult r =
      evolve_full(bv_hamiltonian(mask), StateVector::plus(2, 1), {50.0, 5000}, bv_target(mask));
  EXPECT_GE(r.fidelity_to_target, 0.999);
  EXPECT_LE(r.norm_drift, 1e-9);
}

TEST(EvolveFull, SuddenLimitKeepsInitialOverlap) {
  const BvMask mask(2, 2);
  const StateVector psi0 = StateVector::plus(2, 1);
  const double sudden = fidelity(bv_target(mask), psi0);  // |<target|psi0>|^2
  EXPECT_NEAR(sudden, 0.5, 1e-12);
  const EvolutionResult r = evolve_full(bv_hamiltonian(mask), psi0, {0.01, 10}, bv_target(mask));
  EXPECT_NEAR(r.fidelity_to_target, sudden, 1e-2);
}

TEST(EvolveFull, AgreesWithRk4Reference) {
  const BvMask mask(1, 1);
  const InterpolatedHamiltonian h = bv_hamiltonian(mask);
  const double total = 5.0;
  const auto ham = [&](double t) -> Eigen::MatrixXcd {
    const double s = t / total;
    return s * h.problem.matrix() + (1 - s) * h.driver.matrix();
  };
  const StateVector psi0 = StateVector::plus(1, 1);
  const Eigen::VectorXcd ref = testing::rk4_evolve(
      ham, Eigen::Map<const Eigen::VectorXcd>(psi0.amplitudes().data(), 4), total, 20000);
  const EvolutionResult r = evolve_full(h, psi0, {total, 20000});
  for (Eigen::Index i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(r.final_state[static_cast<std::size_t>(i)] - ref[i]), 0.0, 1e-8);
  }
}

TEST(EvolveFull, ShapeAndCapacityErrors) {
  EXPECT_THROW(evolve_full(bv_hamiltonian(BvMask(2, 1)), StateVector::plus(3, 1), {1.0, 10}),
               ShapeError);
}

TEST(EvolveTwoLevel, AdiabaticLimit) {
  const StateVector phi0 = evolve_two_level({0}, {50.0, 5000});
  EXPECT_GE(std::norm(phi0[0]), 0.999);
  EXPECT_NEAR(phi0.norm_squared(), 1.0, 1e-12);
}

TEST(EvolveTwoLevel, BranchOneIsSigmaXOfBranchZero) {
  for (auto conv : {BlockConvention::bv, BlockConvention::simon}) {
    for (double t : {1.0, 5.0, 50.0}) {
      const Schedule sched{t, static_cast<std::int64_t>(100 * t)};
      const StateVector phi0 = evolve_two_level({0, conv}, sched);
      const StateVector phi1 = evolve_two_level({1, conv}, sched);
      EXPECT_LE(max_abs_diff(phi1, apply(pauli_x(), phi0)), 1e-12) << "T = " << t;
    }
  }
}

TEST(EvolveTwoLevel, ConventionsDifferByGlobalPhase) {
  // H_simon = H_bv + s: the extra phase is exp(-i * integral of s dt) = exp(-i T / 2).
  const Schedule sched{5.0, 500};
  const StateVector bv = evolve_two_level({0, BlockConvention::bv}, sched);
  const StateVector simon = evolve_two_level({0, BlockConvention::simon}, sched);
  const Amplitude phase = std::polar(1.0, -sched.total_time / 2);
  EXPECT_NEAR(std::abs(simon[0] - phase * bv[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(simon[1] - phase * bv[1]), 0.0, 1e-12);
}

TEST(EvolveTwoLevel, MatchesRk4Oracle) {
  const double total = 5.0;
  const auto ham = [&](double t) -> Eigen::MatrixXcd {
    return testing::bv_block_by_hand(0, t / total);
  };
  Eigen::VectorXcd plus(2);
  plus << M_SQRT1_2, M_SQRT1_2;
  const Eigen::VectorXcd ref = testing::rk4_evolve(ham, plus, total, 20000);
  const StateVector phi = evolve_two_level({0}, {total, 1 << 16});
  EXPECT_NEAR(std::abs(phi[0] - ref[0]), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(phi[1] - ref[1]), 0.0, 1e-8);
}

TEST(EvolveTwoLevel, SecondOrderConvergence) {
  const double total = 50.0;
  const StateVector reference = evolve_two_level({0}, {total, 1 << 18});
  double previous = 0.0;
  for (std::int64_t n : {500, 1000, 2000, 4000}) {
    const double err = max_abs_diff(evolve_two_level({0}, {total, n}), reference);
    if (previous > 0.0) {
      const double ratio = previous / err;
      EXPECT_NEAR(ratio, 4.0, 1.0) << "N = " << n;
    }
    previous = err;
  }
}

TEST(AssembleBv, IdealBranchesGiveTarget) {
  const BvMask mask(2, 2);
  const StateVector psi = assemble_bv(mask, StateVector::ket0(), StateVector::ket1());
  int nonzero = 0;
  for (Bits w = 0; w < 4; ++w) {
    for (Bits b = 0; b < 2; ++b) {
      const double expected = static_cast<int>(b) == testing::parity(w & 2) ? 0.5 : 0.0;
      EXPECT_NEAR(std::abs(psi.at(w, b) - expected), 0.0, 1e-15);
      nonzero += expected != 0.0;
    }
  }
  EXPECT_EQ(nonzero, 4);
}

TEST(AssembleBv, PlusBranchesGiveInitialState) {
  const StateVector psi = assemble_bv(BvMask(3, 5), StateVector::ket_plus(), StateVector::ket_plus());
  EXPECT_LE(max_abs_diff(psi, StateVector::plus(3, 1)), 1e-15);
}

TEST(AssembleBv, MatchesFullEvolution) {
  const BvMask mask(3, 5);
  const Schedule sched{50.0, 5000};
  const BranchStates phi = evolve_branches(BlockConvention::bv, sched);
  const EvolutionResult full = evolve_full(bv_hamiltonian(mask), StateVector::plus(3, 1), sched);
  EXPECT_LE(max_abs_diff(full.final_state, assemble_bv(mask, phi.phi0, phi.phi1)), 1e-8);
}

TEST(AssembleSimon, IdealBranchesGiveTarget) {
  const SimonOracle g = simon_build(2, 3);
  const StateVector psi = simon_target(g);
  int nonzero = 0;
  for (Bits w = 0; w < 4; ++w) {
    for (Bits y = 0; y < 2; ++y) {
      const double expected = y == g(w) ? 0.5 : 0.0;
      EXPECT_NEAR(std::abs(psi.at(w, y) - expected), 0.0, 1e-15);
      nonzero += expected != 0.0;
    }
  }
  EXPECT_EQ(nonzero, 4);
}

TEST(AssembleSimon, GroupsIntoCosetPairs) {
  // (1/sqrt(2^{n-1})) sum over representatives of (|w> + |w^a>) (x) |g(w)>, normalized per pair.
  const SimonOracle g = simon_build(4, 0b1010, 3);
  const StateVector psi = simon_target(g);
  std::vector<Amplitude> expected(psi.size());
  const double scale = 1.0 / std::sqrt(8.0) * M_SQRT1_2;
  for (Bits w = 0; w < 16; ++w) {
    if (w > (w ^ g.mask())) continue;  // one representative per coset
    expected[(w << 3) | g(w)] += scale;
    expected[((w ^ g.mask()) << 3) | g(w)] += scale;
  }
  EXPECT_LE(max_abs_diff(psi, StateVector(4, 3, expected)), 1e-15);
}

TEST(AssembleSimon, MatchesFullEvolution) {
  const SimonOracle g = simon_build(3, 5);
  const Schedule sched{50.0, 5000};
  const BranchStates phi = evolve_branches(BlockConvention::simon, sched);
  const EvolutionResult full =
      evolve_full(simon_hamiltonian(g), StateVector::plus(3, 2), sched);
  EXPECT_LE(max_abs_diff(full.final_state, assemble_simon(g, phi.phi0, phi.phi1)), 1e-8);
}

TEST(AssembleSimon, LazyAmplitudeMatchesMaterialized) {
  const SimonOracle g = simon_build(4, 0b0110, 8);
  const BranchStates phi = evolve_branches(BlockConvention::simon, {5.0, 500});
  const StateVector psi = assemble_simon(g, phi.phi0, phi.phi1);
  for (Bits w = 0; w < 16; ++w) {
    for (Bits y = 0; y < 8; ++y) {
      EXPECT_NEAR(std::abs(simon_amplitude(g, phi.phi0, phi.phi1, w, y) - psi.at(w, y)), 0.0, 1e-15);
    }
  }
  EXPECT_THROW(assemble_simon(simon_build(14, 1), phi.phi0, phi.phi1), CapacityError);
  EXPECT_NO_THROW(simon_amplitude(simon_build(40, 3), phi.phi0, phi.phi1, 12345, 99));
}

TEST(FactoredFidelity, MatchesDirectOverlap) {
  const BranchStates bv = evolve_branches(BlockConvention::bv, {5.0, 500});
  for (Bits a : {0u, 3u, 6u}) {
    const BvMask mask(3, a);
    EXPECT_NEAR(bv_factored_fidelity(mask, bv.phi0, bv.phi1),
                fidelity(bv_target(mask), assemble_bv(mask, bv.phi0, bv.phi1)), 1e-13);
  }
  const BranchStates sim = evolve_branches(BlockConvention::simon, {5.0, 500});
  const SimonOracle g = simon_build(4, 0b1001, 2);
  EXPECT_NEAR(simon_factored_fidelity(g, sim.phi0, sim.phi1),
              fidelity(simon_target(g), assemble_simon(g, sim.phi0, sim.phi1)), 1e-13);
}

TEST(Decoupling, FullEqualsFactoredAcrossRuntimes) {
  for (double t : {1.0, 5.0}) {
    const Schedule sched{t, static_cast<std::int64_t>(100 * t)};
    const BranchStates bv = evolve_branches(BlockConvention::bv, sched);
    for (int n = 2; n <= 4; ++n) {
      const BvMask mask(n, (Bits{1} << n) - 2);
      const EvolutionResult full = evolve_full(bv_hamiltonian(mask), StateVector::plus(n, 1), sched);
      EXPECT_LE(max_abs_diff(full.final_state, assemble_bv(mask, bv.phi0, bv.phi1)), 1e-8);
      EXPECT_LE(full.norm_drift, 1e-9);
    }
    const BranchStates sim = evolve_branches(BlockConvention::simon, sched);
    for (int n = 2; n <= 3; ++n) {
      const SimonOracle g = simon_build(n, (Bits{1} << n) - 1, 11);
      const EvolutionResult full = evolve_full(simon_hamiltonian(g), StateVector::plus(n, n - 1), sched);
      EXPECT_LE(max_abs_diff(full.final_state, assemble_simon(g, sim.phi0, sim.phi1)), 1e-8);
    }
  }
}

}  // namespace
}  // namespace aqp
