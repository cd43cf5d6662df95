#pragma once

// Independent reference computations for the unit and acceptance suites.
// Nothing here calls the code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "aqp/qstate.hpp"

namespace aqp::testing {

inline StateVector random_state(int qubits_a, int qubits_b, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<Amplitude> amps(std::size_t{1} << (qubits_a + qubits_b));
  double norm = 0.0;
  for (auto& amp : amps) {
    amp = {normal(gen), normal(gen)};
    norm += std::norm(amp);
  }
  for (auto& amp : amps) amp /= std::sqrt(norm);
  return {qubits_a, qubits_b, std::move(amps)};
}

// Dense normalized Hadamard matrix H^{(x)n}, entry (-1)^{popcount(i&j)} / sqrt(2^n).
inline Eigen::MatrixXd dense_hadamard(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h(dim, dim);
  const double scale = std::pow(2.0, -0.5 * n);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      h(i, j) = (std::popcount(static_cast<std::uint64_t>(i & j)) & 1 ? -scale : scale);
    }
  }
  return h;
}

// Classical RK4 for i psi' = H(t) psi. Not norm-preserving; use a small step.
inline Eigen::VectorXcd rk4_evolve(const std::function<Eigen::MatrixXcd(double)>& hamiltonian,
                                   Eigen::VectorXcd psi, double total_time, int steps) {
  const double dt = total_time / steps;
  const std::complex<double> minus_i{0.0, -1.0};
  auto rhs = [&](double t, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return minus_i * (hamiltonian(t) * v);
  };
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Eigen::VectorXcd k1 = rhs(t, psi);
    const Eigen::VectorXcd k2 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = rhs(t + dt, psi + dt * k3);
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

// 2x2 block of the BV two-level Hamiltonian written out by hand.
inline Eigen::Matrix2cd bv_block_by_hand(int f_bit, double s) {
  const double sign = f_bit ? -1.0 : 1.0;
  Eigen::Matrix2cd m;
  // 1/2 [ (1-s)(1 - X) - s (1 + sign Z) ]
  m(0, 0) = 0.5 * ((1 - s) - s * (1 + sign));
  m(1, 1) = 0.5 * ((1 - s) - s * (1 - sign));
  m(0, 1) = m(1, 0) = -0.5 * (1 - s);
  return m;
}

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace aqp::testing
