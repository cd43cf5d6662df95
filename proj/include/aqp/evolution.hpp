#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "aqp/errors.hpp"
#include "aqp/hamiltonians.hpp"
#include "aqp/oracles.hpp"
#include "aqp/qstate.hpp"

namespace aqp {

/// Linear sweep s(t) = t / T over N equal steps (hbar = 1).
struct Schedule {
  double total_time = 50.0;
  std::int64_t steps = 5000;

  void validate() const {
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
      throw DomainError("Schedule: total time must be positive and finite");
    }
    if (steps < 1) throw DomainError("Schedule: at least one step required");
  }
  double dt() const { return total_time / static_cast<double>(steps); }
  // s at the midpoint of step k.
  double midpoint(std::int64_t k) const {
    return (static_cast<double>(k) + 0.5) / static_cast<double>(steps);
  }
};

inline constexpr double kDefaultRuntime = 50.0;
inline constexpr std::int64_t kDefaultSteps = 5000;
inline constexpr double kNormFailure = 1e-6;

struct EvolutionResult {
  StateVector final_state;
  double norm_drift = 0.0;  // max over steps of | ||psi||^2 - 1 |
  double fidelity_to_target = std::numeric_limits<double>::quiet_NaN();
};

inline double fidelity(const StateVector& target, const StateVector& psi) {
  return std::norm(inner(target, psi));
}

/**
 * Integrates i d(psi)/dt = H(s(t)) psi with the exact propagator of H frozen
 * at each step midpoint, exp(-i dt H(s_mid)), from a Hermitian
 * eigendecomposition. Unitary per step; second order globally.
 */
inline EvolutionResult evolve_full(const InterpolatedHamiltonian& h, const StateVector& psi0,
                                   const Schedule& sched) {
  sched.validate();
  check_qubit_cap(h.qubits_a + h.qubits_b, kDenseOperatorCap, "evolve_full");
  if (h.problem.dim() != psi0.size() || h.driver.dim() != psi0.size()) {
    throw ShapeError("evolve_full: Hamiltonian and state dimensions differ");
  }

  const auto dim = static_cast<Eigen::Index>(psi0.size());
  Eigen::VectorXcd psi = Eigen::Map<const Eigen::VectorXcd>(psi0.amplitudes().data(), dim);
  const double initial_norm = psi.squaredNorm();
  const double dt = sched.dt();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  double drift = 0.0;

  for (std::int64_t k = 0; k < sched.steps; ++k) {
    const double s = sched.midpoint(k);
    solver.compute(s * h.problem.matrix() + (1.0 - s) * h.driver.matrix());
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    Eigen::VectorXcd coeffs = vecs.adjoint() * psi;
    for (Eigen::Index i = 0; i < dim; ++i) {
      coeffs[i] *= std::polar(1.0, -dt * solver.eigenvalues()[i]);
    }
    psi = vecs * coeffs;
    drift = std::max(drift, std::abs(psi.squaredNorm() - initial_norm));
  }
  if (drift > kNormFailure) {
    throw IntegrationError("evolve_full: norm drift " + std::to_string(drift) +
                           " exceeds tolerance");
  }
  return {StateVector(psi0.qubits_a(), psi0.qubits_b(),
                      std::vector<Amplitude>(psi.begin(), psi.end())),
          drift};
}

inline EvolutionResult evolve_full(const InterpolatedHamiltonian& h, const StateVector& psi0,
                                   const Schedule& sched, const StateVector& target) {
  EvolutionResult result = evolve_full(h, psi0, sched);
  result.fidelity_to_target = fidelity(target, result.final_state);
  return result;
}

namespace detail {

using Mat2 = std::array<Amplitude, 4>;  // row-major

// exp(-i tau M) for Hermitian 2x2 M = c0 + c.sigma.
inline Mat2 expm_hermitian2(const Mat2& m, double tau) {
  const double c0 = 0.5 * (m[0].real() + m[3].real());
  const double cz = 0.5 * (m[0].real() - m[3].real());
  const double r = std::sqrt(cz * cz + std::norm(m[1]));
  const Amplitude phase = std::polar(1.0, -tau * c0);
  const double cosr = std::cos(tau * r);
  // sin(tau r) / r, continuous at r = 0
  const double sinc = r > 0.0 ? std::sin(tau * r) / r : tau;
  const Amplitude minus_i{0.0, -1.0};
  return {phase * (cosr + minus_i * sinc * cz), phase * (minus_i * sinc * m[1]),
          phase * (minus_i * sinc * m[2]), phase * (cosr - minus_i * sinc * cz)};
}

inline Mat2 block_matrix(const TwoLevelBlock& block, double s) {
  const DenseOperator h = two_level(block, s);
  return {h(0, 0), h(0, 1), h(1, 0), h(1, 1)};
}

}  // namespace detail

/// Evolves |+> under one two-level block; the result keeps its full phase.
inline StateVector evolve_two_level(const TwoLevelBlock& block, const Schedule& sched) {
  sched.validate();
  const double dt = sched.dt();
  Amplitude up{M_SQRT1_2, 0.0};
  Amplitude down{M_SQRT1_2, 0.0};
  for (std::int64_t k = 0; k < sched.steps; ++k) {
    const auto u = detail::expm_hermitian2(detail::block_matrix(block, sched.midpoint(k)), dt);
    const Amplitude next_up = u[0] * up + u[1] * down;
    const Amplitude next_down = u[2] * up + u[3] * down;
    up = next_up;
    down = next_down;
  }
  return StateVector::qubit(up, down);
}

/// Final single-qubit states of the f = 0 and f = 1 branches.
struct BranchStates {
  StateVector phi0;
  StateVector phi1;
};

inline BranchStates evolve_branches(BlockConvention convention, const Schedule& sched) {
  return {evolve_two_level({0, convention}, sched), evolve_two_level({1, convention}, sched)};
}

inline void check_branch_state(const StateVector& phi, const char* what) {
  if (phi.size() != 2) throw ShapeError(std::string(what) + ": branch state must be one qubit");
}

/// (1/sqrt(2^n)) sum_w |w> (x) phi_{f(w)}.
inline StateVector assemble_bv(const BvMask& mask, const StateVector& phi0,
                               const StateVector& phi1, int cap = kDefaultQubitCap) {
  check_branch_state(phi0, "assemble_bv");
  check_branch_state(phi1, "assemble_bv");
  check_qubit_cap(mask.n + 1, cap, "assemble_bv");
  const Bits inputs = Bits{1} << mask.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(inputs));
  std::vector<Amplitude> amps(2 * inputs);
  for (Bits w = 0; w < inputs; ++w) {
    const StateVector& phi = bv_eval(mask, w) ? phi1 : phi0;
    amps[2 * w] = scale * phi[0];
    amps[2 * w + 1] = scale * phi[1];
  }
  return {mask.n, 1, std::move(amps)};
}

/// Amplitude <w, y | final> of the Simon product state without materializing it.
inline Amplitude simon_amplitude(const SimonOracle& oracle, const StateVector& phi0,
                                 const StateVector& phi1, Bits w, Bits y) {
  check_input(oracle.n() - 1, y, "simon_amplitude");
  const Bits g = oracle(w);
  Amplitude amp = std::pow(M_SQRT1_2, oracle.n());
  for (int k = 0; k < oracle.n() - 1; ++k) {
    const StateVector& phi = bit_of(g, k) ? phi1 : phi0;
    amp *= phi[static_cast<std::size_t>(bit_of(y, k))];
  }
  return amp;
}

/// (1/sqrt(2^n)) sum_w |w> (x) (tensor_k phi_{g_k(w)}).
inline StateVector assemble_simon(const SimonOracle& oracle, const StateVector& phi0,
                                  const StateVector& phi1, int cap = kDefaultQubitCap) {
  check_branch_state(phi0, "assemble_simon");
  check_branch_state(phi1, "assemble_simon");
  const int n = oracle.n();
  const int nb = n - 1;
  check_qubit_cap(n + nb, cap, "assemble_simon");

  // Output-register product state for every possible g value, reused across the 2 w's per coset.
  const Bits outputs = Bits{1} << nb;
  std::vector<Amplitude> per_output(outputs * outputs);
  for (Bits g = 0; g < outputs; ++g) {
    for (Bits y = 0; y < outputs; ++y) {
      Amplitude amp = 1.0;
      for (int k = 0; k < nb; ++k) {
        amp *= (bit_of(g, k) ? phi1 : phi0)[static_cast<std::size_t>(bit_of(y, k))];
      }
      per_output[g * outputs + y] = amp;
    }
  }
  const double scale = std::pow(M_SQRT1_2, n);
  std::vector<Amplitude> amps(std::size_t{1} << (n + nb));
  for (Bits w = 0; w < (Bits{1} << n); ++w) {
    const Bits g = oracle(w);
    for (Bits y = 0; y < outputs; ++y) amps[(w << nb) | y] = scale * per_output[g * outputs + y];
  }
  return {n, nb, std::move(amps)};
}

inline StateVector bv_target(const BvMask& mask, int cap = kDefaultQubitCap) {
  return assemble_bv(mask, StateVector::ket0(), StateVector::ket1(), cap);
}

inline StateVector simon_target(const SimonOracle& oracle, int cap = kDefaultQubitCap) {
  return assemble_simon(oracle, StateVector::ket0(), StateVector::ket1(), cap);
}

/// Overlap of assemble_bv(mask, phi) with the ideal target, in O(1).
inline double bv_factored_fidelity(const BvMask& mask, const StateVector& phi0,
                                   const StateVector& phi1) {
  // Exactly half of the inputs have f = 1 when a != 0, none when a = 0.
  const double ones_fraction = mask.a == 0 ? 0.0 : 0.5;
  return std::norm((1.0 - ones_fraction) * phi0[0] + ones_fraction * phi1[1]);
}

/// Overlap with the ideal Simon target; g hits every output twice, so it factorizes per spin.
inline double simon_factored_fidelity(const SimonOracle& oracle, const StateVector& phi0,
                                      const StateVector& phi1) {
  const Amplitude per_spin = 0.5 * (phi0[0] + phi1[1]);
  return std::norm(std::pow(per_spin, oracle.n() - 1));
}

}  // namespace aqp
