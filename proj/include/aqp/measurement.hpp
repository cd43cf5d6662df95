#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aqp/errors.hpp"
#include "aqp/evolution.hpp"
#include "aqp/oracles.hpp"
#include "aqp/qstate.hpp"
#include "aqp/random.hpp"

namespace aqp {

enum class Basis { z, x };

/// Outcome of a projective measurement of one whole register.
/// For the x basis, outcome bit k = 0 means |+> and 1 means |->.
struct MeasurementRecord {
  Basis basis = Basis::z;
  Subsystem subsystem = Subsystem::B;
  Bits outcome = 0;
  StateVector post_state;
};

/// z-basis outcome distribution of one register (the other is traced out).
inline std::vector<double> marginal_probabilities(const StateVector& psi, Subsystem subsystem) {
  const int nb = psi.qubits_b();
  const Bits mask_b = (Bits{1} << nb) - 1;
  const int measured = subsystem == Subsystem::A ? psi.qubits_a() : nb;
  std::vector<double> probs(std::size_t{1} << measured, 0.0);
  for (Bits i = 0; i < psi.size(); ++i) {
    const Bits label = subsystem == Subsystem::A ? (i >> nb) : (i & mask_b);
    probs[label] += std::norm(psi[i]);
  }
  return probs;
}

/**
 * Draws an index with probability proportional to weights, consuming exactly
 * one uniform draw. Zero-weight entries are never selected.
 */
inline std::size_t sample_index(std::span<const double> weights, RandomSource& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw MeasurementError("sample_index: all outcome probabilities are zero");
  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  std::size_t last_nonzero = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_nonzero = i;
    if (u < cumulative) return i;
  }
  // u landed past the rounded cumulative sum
  return last_nonzero;
}

inline MeasurementRecord measure_z(const StateVector& psi, Subsystem subsystem, RandomSource& rng) {
  const std::vector<double> probs = marginal_probabilities(psi, subsystem);
  const std::size_t outcome = sample_index(probs, rng);
  const double p = probs[outcome];
  if (!(p > 1e-300)) throw MeasurementError("measure_z: selected branch has underflowed");

  const int nb = psi.qubits_b();
  const Bits mask_b = (Bits{1} << nb) - 1;
  const double scale = 1.0 / std::sqrt(p);
  std::vector<Amplitude> post(psi.size());
  for (Bits i = 0; i < psi.size(); ++i) {
    const Bits label = subsystem == Subsystem::A ? (i >> nb) : (i & mask_b);
    if (label == outcome) post[i] = scale * psi[i];
  }
  return {Basis::z, subsystem, outcome, StateVector(psi.qubits_a(), nb, std::move(post))};
}

/// Hadamard sandwich: H on the register, z-measure, H back.
inline MeasurementRecord measure_x(const StateVector& psi, Subsystem subsystem, RandomSource& rng) {
  MeasurementRecord record = measure_z(fwht_subsystem(psi, subsystem), subsystem, rng);
  record.basis = Basis::x;
  record.post_state = fwht_subsystem(record.post_state, subsystem);
  return record;
}

struct BvReadout {
  bool restart = true;
  std::optional<Bits> a_candidate;
};

/// x-measure the output qubit; on |-> read every a_k from the input register's x-basis outcome.
inline BvReadout bv_readout(const StateVector& final_state, RandomSource& rng) {
  const MeasurementRecord output = measure_x(final_state, Subsystem::B, rng);
  if (output.outcome == 0) return {true, std::nullopt};
  const MeasurementRecord input = measure_x(output.post_state, Subsystem::A, rng);
  return {false, input.outcome};
}

/// Exact probability that bv_readout asks for a restart.
inline double bv_restart_probability(const StateVector& final_state) {
  return marginal_probabilities(fwht_subsystem(final_state, Subsystem::B), Subsystem::B)[0];
}

/**
 * Same distribution as bv_readout(assemble_bv(mask, phi0, phi1)) using only
 * the 2^n input register. The output-qubit draw consumes one uniform exactly
 * like the dense path.
 */
inline BvReadout bv_readout_factored(const BvMask& mask, const StateVector& phi0,
                                     const StateVector& phi1, RandomSource& rng,
                                     int cap = kDefaultQubitCap - 2) {
  check_branch_state(phi0, "bv_readout_factored");
  check_branch_state(phi1, "bv_readout_factored");
  check_qubit_cap(mask.n, cap, "bv_readout_factored");
  const Bits inputs = Bits{1} << mask.n;
  // <-|phi_b> for each branch
  const Amplitude minus0 = M_SQRT1_2 * (phi0[0] - phi0[1]);
  const Amplitude minus1 = M_SQRT1_2 * (phi1[0] - phi1[1]);
  const Amplitude plus0 = M_SQRT1_2 * (phi0[0] + phi0[1]);
  const Amplitude plus1 = M_SQRT1_2 * (phi1[0] + phi1[1]);
  const double ones = mask.a == 0 ? 0.0 : 0.5;
  const std::array<double, 2> probs{(1.0 - ones) * std::norm(plus0) + ones * std::norm(plus1),
                                    (1.0 - ones) * std::norm(minus0) + ones * std::norm(minus1)};
  if (sample_index(probs, rng) == 0) return {true, std::nullopt};
  if (!(probs[1] > 1e-300)) throw MeasurementError("bv_readout_factored: branch underflow");

  std::vector<Amplitude> alpha(inputs);
  for (Bits w = 0; w < inputs; ++w) alpha[w] = bv_eval(mask, w) ? minus1 : minus0;
  fwht_inplace(alpha);
  std::vector<double> weights(inputs);
  for (Bits x = 0; x < inputs; ++x) weights[x] = std::norm(alpha[x]);
  return {false, static_cast<Bits>(sample_index(weights, rng))};
}

/// z-measure the output register, then x-measure the input register.
inline Bits simon_sample(const StateVector& final_state, RandomSource& rng) {
  const MeasurementRecord output = measure_z(final_state, Subsystem::B, rng);
  return measure_x(output.post_state, Subsystem::A, rng).outcome;
}

/// Exact distribution of simon_sample over x.
inline std::vector<double> simon_distribution(const StateVector& final_state) {
  return marginal_probabilities(fwht_subsystem(final_state, Subsystem::A), Subsystem::A);
}

namespace detail {

// Unnormalized input-register amplitudes given output y: alpha_w = prod_k phi_{g_k(w)}[y_k].
inline std::vector<Amplitude> simon_conditional(const SimonOracle& oracle, const StateVector& phi0,
                                                const StateVector& phi1, Bits y) {
  const int nb = oracle.n() - 1;
  // The product depends only on g(w); precompute per-spin factors.
  std::array<std::vector<Amplitude>, 2> factor{std::vector<Amplitude>(nb),
                                               std::vector<Amplitude>(nb)};
  for (int k = 0; k < nb; ++k) {
    factor[0][k] = phi0[static_cast<std::size_t>(bit_of(y, k))];
    factor[1][k] = phi1[static_cast<std::size_t>(bit_of(y, k))];
  }
  std::vector<Amplitude> alpha(std::size_t{1} << oracle.n());
  for (Bits w = 0; w < alpha.size(); ++w) {
    const Bits g = oracle(w);
    Amplitude amp = 1.0;
    for (int k = 0; k < nb; ++k) amp *= factor[static_cast<std::size_t>(bit_of(g, k))][k];
    alpha[w] = amp;
  }
  return alpha;
}

}  // namespace detail

/**
 * Exact sampler for simon_sample(assemble_simon(oracle, phi0, phi1)) in
 * O(n 2^n) work. Draw order: w* uniform, then y bits in ascending k, then x.
 */
inline Bits simon_sample_factored(const SimonOracle& oracle, const StateVector& phi0,
                                  const StateVector& phi1, RandomSource& rng,
                                  int cap = kDefaultQubitCap - 2) {
  check_branch_state(phi0, "simon_sample_factored");
  check_branch_state(phi1, "simon_sample_factored");
  check_qubit_cap(oracle.n(), cap, "simon_sample_factored");
  const Bits w_star = rng.below(Bits{1} << oracle.n());
  const Bits g_star = oracle(w_star);
  Bits y = 0;
  for (int k = 0; k < oracle.n() - 1; ++k) {
    const StateVector& phi = bit_of(g_star, k) ? phi1 : phi0;
    const std::array<double, 2> probs{std::norm(phi[0]), std::norm(phi[1])};
    y |= static_cast<Bits>(sample_index(probs, rng)) << k;
  }
  std::vector<Amplitude> alpha = detail::simon_conditional(oracle, phi0, phi1, y);
  fwht_inplace(alpha);
  std::vector<double> weights(alpha.size());
  for (std::size_t x = 0; x < alpha.size(); ++x) weights[x] = std::norm(alpha[x]);
  return static_cast<Bits>(sample_index(weights, rng));
}

/// Exact x distribution of the factored construction, by enumerating y.
inline std::vector<double> simon_distribution_factored(const SimonOracle& oracle,
                                                       const StateVector& phi0,
                                                       const StateVector& phi1) {
  check_qubit_cap(2 * oracle.n() - 1, kDefaultQubitCap, "simon_distribution_factored");
  const double scale = std::pow(0.5, oracle.n());
  std::vector<double> probs(std::size_t{1} << oracle.n(), 0.0);
  for (Bits y = 0; y < (Bits{1} << (oracle.n() - 1)); ++y) {
    std::vector<Amplitude> alpha = detail::simon_conditional(oracle, phi0, phi1, y);
    fwht_inplace(alpha);
    for (std::size_t x = 0; x < alpha.size(); ++x) probs[x] += scale * std::norm(alpha[x]);
  }
  return probs;
}

}  // namespace aqp
