#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aqp/errors.hpp"

namespace aqp {

using Amplitude = std::complex<double>;
using Bits = std::uint64_t;

enum class Subsystem { A, B };

/// Default cap on the total qubit count of a dense state vector.
inline constexpr int kDefaultQubitCap = 26;

inline void check_qubit_cap(int qubits, int cap, const char* what) {
  if (qubits < 0) throw DomainError(std::string(what) + ": negative qubit count");
  if (qubits > cap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(qubits) +
                        " qubits exceeds cap of " + std::to_string(cap));
  }
}

inline constexpr int bit_of(Bits value, int k) { return static_cast<int>((value >> k) & 1U); }

/**
 * Dense amplitude vector over two tensored registers A (high bits) and B
 * (low bits). Basis index = w * 2^qubits_b + y; bit k of an integer is the
 * k-th qubit, and |0> is spin-up along z.
 *
 * The vector is a value type: every operation returns a new state.
 */
class StateVector {
 public:
  StateVector() : amps_(1, Amplitude{1.0, 0.0}) {}

  StateVector(int qubits_a, int qubits_b, std::vector<Amplitude> amps)
      : qubits_a_(qubits_a), qubits_b_(qubits_b), amps_(std::move(amps)) {
    if (qubits_a < 0 || qubits_b < 0) throw DomainError("StateVector: negative qubit count");
    check_qubit_cap(qubits_a + qubits_b, 63, "StateVector");
    if (amps_.size() != (std::size_t{1} << (qubits_a + qubits_b))) {
      throw ShapeError("StateVector: amplitude count " + std::to_string(amps_.size()) +
                       " does not match 2^" + std::to_string(qubits_a + qubits_b));
    }
    for (const auto& amp : amps_) {
      if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
        throw DomainError("StateVector: non-finite amplitude");
      }
    }
  }

  static StateVector basis(int qubits_a, int qubits_b, Bits index,
                           int cap = kDefaultQubitCap) {
    check_qubit_cap(qubits_a + qubits_b, cap, "StateVector::basis");
    std::vector<Amplitude> amps(std::size_t{1} << (qubits_a + qubits_b));
    if (index >= amps.size()) throw DomainError("StateVector::basis: index out of range");
    amps[index] = 1.0;
    return {qubits_a, qubits_b, std::move(amps)};
  }

  // |+...+> over both registers.
  static StateVector plus(int qubits_a, int qubits_b, int cap = kDefaultQubitCap) {
    check_qubit_cap(qubits_a + qubits_b, cap, "StateVector::plus");
    const std::size_t dim = std::size_t{1} << (qubits_a + qubits_b);
    return {qubits_a, qubits_b,
            std::vector<Amplitude>(dim, Amplitude{1.0 / std::sqrt(static_cast<double>(dim)), 0.0})};
  }

  // Single-qubit helpers, placed in register B.
  static StateVector qubit(Amplitude zero, Amplitude one) { return {0, 1, {zero, one}}; }
  static StateVector ket0() { return qubit(1.0, 0.0); }
  static StateVector ket1() { return qubit(0.0, 1.0); }
  static StateVector ket_plus() { return qubit(M_SQRT1_2, M_SQRT1_2); }
  static StateVector ket_minus() { return qubit(M_SQRT1_2, -M_SQRT1_2); }

  int qubits_a() const noexcept { return qubits_a_; }
  int qubits_b() const noexcept { return qubits_b_; }
  int qubits() const noexcept { return qubits_a_ + qubits_b_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }
  Amplitude at(Bits w, Bits y) const { return amps_.at((w << qubits_b_) | y); }

  double norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& amp : amps_) total += std::norm(amp);
    return total;
  }

  // Same amplitudes reinterpreted with a different A/B split.
  StateVector regrouped(int qubits_a) const {
    return {qubits_a, qubits() - qubits_a, amps_};
  }

  std::vector<Amplitude> release() && { return std::move(amps_); }

 private:
  int qubits_a_ = 0;
  int qubits_b_ = 0;
  std::vector<Amplitude> amps_;
};

inline double max_abs_diff(const StateVector& u, const StateVector& v) {
  if (u.size() != v.size()) throw ShapeError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] - v[i]));
  return worst;
}

/// Square complex matrix. Hamiltonian builders return Hermitian instances.
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw ShapeError("DenseOperator: matrix not square");
  }

  static DenseOperator identity(std::size_t dim) {
    return DenseOperator(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim)));
  }
  static DenseOperator diagonal(std::span<const double> values) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(values.size()),
                                                static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return DenseOperator(std::move(m));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  Amplitude operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }

  bool is_hermitian(double tol = 1e-12) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  // Ascending eigenvalues; only valid for Hermitian operators.
  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

  friend DenseOperator operator+(const DenseOperator& x, const DenseOperator& y) {
    if (x.dim() != y.dim()) throw ShapeError("DenseOperator +: dimension mismatch");
    return DenseOperator(x.entries_ + y.entries_);
  }
  friend DenseOperator operator*(double c, const DenseOperator& x) {
    return DenseOperator(c * x.entries_);
  }
  friend DenseOperator operator*(const DenseOperator& x, const DenseOperator& y) {
    if (x.dim() != y.dim()) throw ShapeError("DenseOperator *: dimension mismatch");
    return DenseOperator(x.entries_ * y.entries_);
  }

 private:
  Eigen::MatrixXcd entries_;
};

inline DenseOperator pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return DenseOperator(std::move(m));
}

inline DenseOperator pauli_z() {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return DenseOperator(std::move(m));
}

// Kronecker product; x acts on the high bits of the result.
inline DenseOperator kron(const DenseOperator& x, const DenseOperator& y) {
  const auto& a = x.matrix();
  const auto& b = y.matrix();
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return DenseOperator(std::move(out));
}

inline StateVector tensor(const StateVector& u, const StateVector& v,
                          int cap = kDefaultQubitCap) {
  check_qubit_cap(u.qubits() + v.qubits(), cap, "tensor");
  std::vector<Amplitude> out(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i * v.size() + j] = u[i] * v[j];
  }
  return {u.qubits(), v.qubits(), std::move(out)};
}

/// <u|v>, conjugate-linear in u.
inline Amplitude inner(const StateVector& u, const StateVector& v) {
  if (u.size() != v.size()) throw ShapeError("inner: dimension mismatch");
  Amplitude total{};
  for (std::size_t i = 0; i < u.size(); ++i) total += std::conj(u[i]) * v[i];
  return total;
}

namespace detail {

// In-place normalized Hadamard on index bits [lo, lo + count).
inline void hadamard_bits(std::span<Amplitude> amps, int lo, int count) {
  for (int k = lo; k < lo + count; ++k) {
    const std::size_t stride = std::size_t{1} << k;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const Amplitude x = amps[i];
        const Amplitude y = amps[i + stride];
        amps[i] = x + y;
        amps[i + stride] = x - y;
      }
    }
  }
  const double scale = std::pow(M_SQRT1_2, count);
  for (auto& amp : amps) amp *= scale;
}

}  // namespace detail

/// In-place fast Walsh-Hadamard transform of a plain amplitude array.
inline void fwht_inplace(std::span<Amplitude> amps) {
  if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
    throw ShapeError("fwht_inplace: length must be a power of two");
  }
  detail::hadamard_bits(amps, 0, std::countr_zero(amps.size()));
}

/// Hadamard on every qubit of one register: O(n 2^n) butterflies.
inline StateVector fwht_subsystem(const StateVector& psi, Subsystem subsystem) {
  std::vector<Amplitude> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  if (subsystem == Subsystem::A) {
    detail::hadamard_bits(amps, psi.qubits_b(), psi.qubits_a());
  } else {
    detail::hadamard_bits(amps, 0, psi.qubits_b());
  }
  return {psi.qubits_a(), psi.qubits_b(), std::move(amps)};
}

/// Matrix-vector product; the result is not renormalized.
inline StateVector apply(const DenseOperator& op, const StateVector& psi) {
  if (op.dim() != psi.size()) throw ShapeError("apply: operator and state dimensions differ");
  Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes().data(),
                                        static_cast<Eigen::Index>(psi.size()));
  Eigen::VectorXcd out = op.matrix() * in;
  return {psi.qubits_a(), psi.qubits_b(), std::vector<Amplitude>(out.begin(), out.end())};
}

}  // namespace aqp
