#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "aqp/errors.hpp"
#include "aqp/oracles.hpp"
#include "aqp/qstate.hpp"

namespace aqp {

/// Dense operators (and their diagonalization) are capped at 12 qubits.
inline constexpr int kDenseOperatorCap = 12;

/// Linear interpolation H(s) = s * problem + (1 - s) * driver.
struct InterpolatedHamiltonian {
  DenseOperator problem;
  DenseOperator driver;
  int qubits_a = 0;
  int qubits_b = 0;
};

// Sign convention of a single-qubit block. The BV block has ground energy -1
// at s = 1, the Simon per-spin block has ground energy 0; they differ by -s * 1.
enum class BlockConvention { bv, simon };

struct TwoLevelBlock {
  int f_bit = 0;
  BlockConvention convention = BlockConvention::bv;
};

inline void check_schedule_parameter(double s, const char* what) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError(std::string(what) + ": s must lie in [0, 1]");
}

/// Diagonal: -1 on |w>|f(w)>, 0 elsewhere.
inline DenseOperator bv_problem(const BvMask& mask) {
  check_qubit_cap(mask.n + 1, kDenseOperatorCap, "bv_problem");
  std::vector<double> diag(std::size_t{1} << (mask.n + 1), 0.0);
  for (Bits w = 0; w < (Bits{1} << mask.n); ++w) {
    diag[(w << 1) | static_cast<Bits>(bv_eval(mask, w))] = -1.0;
  }
  return DenseOperator::diagonal(diag);
}

/// 1_A (x) (1 - sigma_x)/2 on the single output qubit.
inline DenseOperator bv_driver(int n) {
  check_qubit_cap(n + 1, kDenseOperatorCap, "bv_driver");
  const DenseOperator single = 0.5 * (DenseOperator::identity(2) + (-1.0) * pauli_x());
  return kron(DenseOperator::identity(std::size_t{1} << n), single);
}

/// Diagonal with entry hamming(y, g(w)) at |w>|y>.
inline DenseOperator simon_problem(const SimonOracle& oracle) {
  const int n = oracle.n();
  check_qubit_cap(2 * n - 1, kDenseOperatorCap, "simon_problem");
  const int nb = n - 1;
  std::vector<double> diag(std::size_t{1} << (2 * n - 1));
  for (Bits w = 0; w < (Bits{1} << n); ++w) {
    const Bits g = oracle(w);
    for (Bits y = 0; y < (Bits{1} << nb); ++y) {
      diag[(w << nb) | y] = static_cast<double>(hamming(y, g));
    }
  }
  return DenseOperator::diagonal(diag);
}

/// Same operator assembled from Pauli terms: sum_w |w><w| (x) 1/2 sum_k [1 - (-1)^{g_k(w)} Z_k].
inline DenseOperator simon_problem_pauli(const SimonOracle& oracle) {
  const int n = oracle.n();
  check_qubit_cap(2 * n - 1, kDenseOperatorCap, "simon_problem_pauli");
  const int nb = n - 1;
  const std::size_t dim_b = std::size_t{1} << nb;
  const std::size_t dim_a = std::size_t{1} << n;

  // Z_k embedded in the B register; qubit k is index bit k.
  std::vector<DenseOperator> z_terms;
  for (int k = 0; k < nb; ++k) {
    z_terms.push_back(kron(kron(DenseOperator::identity(std::size_t{1} << (nb - 1 - k)), pauli_z()),
                           DenseOperator::identity(std::size_t{1} << k)));
  }

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_a * dim_b),
                                                  static_cast<Eigen::Index>(dim_a * dim_b));
  for (Bits w = 0; w < dim_a; ++w) {
    const Bits g = oracle(w);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_b),
                                                    static_cast<Eigen::Index>(dim_b));
    for (int k = 0; k < nb; ++k) {
      const double sign = bit_of(g, k) ? -1.0 : 1.0;
      block += 0.5 * (Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim_b),
                                                 static_cast<Eigen::Index>(dim_b)) -
                      sign * z_terms[static_cast<std::size_t>(k)].matrix());
    }
    const auto offset = static_cast<Eigen::Index>(w * dim_b);
    total.block(offset, offset, block.rows(), block.cols()) = block;
  }
  return DenseOperator(std::move(total));
}

/// Transverse field 1/2 sum_k (1 - X_k) on the n-1 output qubits.
inline DenseOperator simon_driver(int n) {
  if (n < 2) throw DomainError("simon_driver: n must be at least 2");
  check_qubit_cap(2 * n - 1, kDenseOperatorCap, "simon_driver");
  const int nb = n - 1;
  const DenseOperator single = 0.5 * (DenseOperator::identity(2) + (-1.0) * pauli_x());
  DenseOperator field(Eigen::MatrixXcd::Zero(Eigen::Index{1} << nb, Eigen::Index{1} << nb));
  for (int k = 0; k < nb; ++k) {
    field = field + kron(kron(DenseOperator::identity(std::size_t{1} << (nb - 1 - k)), single),
                         DenseOperator::identity(std::size_t{1} << k));
  }
  return kron(DenseOperator::identity(std::size_t{1} << n), field);
}

inline InterpolatedHamiltonian bv_hamiltonian(const BvMask& mask) {
  return {bv_problem(mask), bv_driver(mask.n), mask.n, 1};
}

inline InterpolatedHamiltonian simon_hamiltonian(const SimonOracle& oracle) {
  return {simon_problem(oracle), simon_driver(oracle.n()), oracle.n(), oracle.n() - 1};
}

inline DenseOperator interpolate(const InterpolatedHamiltonian& h, double s) {
  check_schedule_parameter(s, "interpolate");
  if (s == 0.0) return h.driver;
  if (s == 1.0) return h.problem;
  return DenseOperator(s * h.problem.matrix() + (1.0 - s) * h.driver.matrix());
}

/// Single-qubit block H_w(s) for the given output bit.
inline DenseOperator two_level(const TwoLevelBlock& block, double s) {
  const double sign = block.f_bit ? -1.0 : 1.0;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd sx = pauli_x().matrix();
  const Eigen::Matrix2cd sz = pauli_z().matrix();
  Eigen::Matrix2cd m;
  if (block.convention == BlockConvention::bv) {
    m = 0.5 * ((1.0 - s) * (id - sx) - s * (id + sign * sz));
  } else {
    m = 0.5 * ((1.0 - s) * (id - sx) + s * (id - sign * sz));
  }
  return DenseOperator(Eigen::MatrixXcd(m));
}

/// Eigenvalue splitting of a 2x2 Hermitian block.
inline double gap(const TwoLevelBlock& block, double s) {
  const DenseOperator h = two_level(block, s);
  const double diff = (h(0, 0) - h(1, 1)).real();
  return std::sqrt(diff * diff + 4.0 * std::norm(h(0, 1)));
}

struct GapSample {
  double s = 0.0;
  double gap = 0.0;
};

struct GapScan {
  double s_min = 0.0;
  double gap_min = std::numeric_limits<double>::infinity();
  std::vector<GapSample> samples;
};

// Distance from the (possibly degenerate) lowest level to the next distinct level.
inline double spectral_gap(const Eigen::VectorXd& ascending, double degeneracy_tol = 1e-9) {
  for (Eigen::Index i = 1; i < ascending.size(); ++i) {
    if (ascending[i] - ascending[0] > degeneracy_tol) return ascending[i] - ascending[0];
  }
  return std::numeric_limits<double>::infinity();
}

/// Uniform-grid scan of the dense spectrum of H(s), s = i / (grid - 1).
inline GapScan min_gap_scan(const InterpolatedHamiltonian& h, int grid) {
  if (grid < 3) throw DomainError("min_gap_scan: grid must have at least 3 points");
  check_qubit_cap(h.qubits_a + h.qubits_b, kDenseOperatorCap, "min_gap_scan");
  GapScan scan;
  scan.samples.reserve(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double s = static_cast<double>(i) / (grid - 1);
    const double g = spectral_gap(interpolate(h, s).eigenvalues());
    scan.samples.push_back({s, g});
    if (g < scan.gap_min) {
      scan.gap_min = g;
      scan.s_min = s;
    }
  }
  return scan;
}

}  // namespace aqp
