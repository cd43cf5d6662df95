#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aqp/errors.hpp"
#include "aqp/qstate.hpp"

namespace aqp {

inline int dot2(Bits x, Bits a) { return std::popcount(x & a) & 1; }

/// Accumulated equations x . a = 0 over GF(2), one machine word per row.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(int n_cols) : n_cols_(n_cols) {
    if (n_cols < 1 || n_cols > 63) throw DomainError("Gf2Matrix: column count must lie in [1, 63]");
  }

  // Zero rows are tallied but not stored.
  void add_row(Bits row) {
    if (row >> n_cols_) throw DomainError("Gf2Matrix::add_row: row wider than the matrix");
    if (row == 0) {
      ++zero_rows_;
    } else {
      rows_.push_back(row);
    }
  }

  int n_cols() const noexcept { return n_cols_; }
  std::span<const Bits> rows() const noexcept { return rows_; }
  std::size_t zero_rows() const noexcept { return zero_rows_; }
  std::size_t rows_recorded() const noexcept { return rows_.size() + zero_rows_; }

 private:
  int n_cols_;
  std::vector<Bits> rows_;
  std::size_t zero_rows_ = 0;
};

namespace detail {

// Reduced row echelon form; pivot[i] is the leading column of row i.
struct Echelon {
  std::vector<Bits> rows;
  std::vector<int> pivots;
};

inline Echelon reduce(const Gf2Matrix& m) {
  Echelon e;
  std::vector<Bits> work(m.rows().begin(), m.rows().end());
  std::size_t next = 0;
  for (int col = m.n_cols() - 1; col >= 0 && next < work.size(); --col) {
    const Bits bit = Bits{1} << col;
    std::size_t pivot = next;
    while (pivot < work.size() && !(work[pivot] & bit)) ++pivot;
    if (pivot == work.size()) continue;
    std::swap(work[next], work[pivot]);
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i != next && (work[i] & bit)) work[i] ^= work[next];
    }
    e.pivots.push_back(col);
    ++next;
  }
  work.resize(next);
  e.rows = std::move(work);
  return e;
}

}  // namespace detail

inline int rank(const Gf2Matrix& m) { return static_cast<int>(detail::reduce(m).rows.size()); }

/// Basis of {v : row . v = 0 for every row}; size n - rank.
inline std::vector<Bits> nullspace(const Gf2Matrix& m) {
  const detail::Echelon e = detail::reduce(m);
  Bits pivot_cols = 0;
  for (int c : e.pivots) pivot_cols |= Bits{1} << c;

  std::vector<Bits> basis;
  for (int free = 0; free < m.n_cols(); ++free) {
    const Bits free_bit = Bits{1} << free;
    if (pivot_cols & free_bit) continue;
    // Set the free column, then solve each pivot variable from its row.
    Bits v = free_bit;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if (e.rows[i] & free_bit) v |= Bits{1} << e.pivots[i];
    }
    basis.push_back(v);
  }
  return basis;
}

enum class RecoveryStatus { unique, underdetermined };

struct MaskRecovery {
  RecoveryStatus status = RecoveryStatus::underdetermined;
  std::optional<Bits> a_candidate;
};

/// Unique nonzero solution once rank reaches n - 1; throws ContradictionError at rank n.
inline MaskRecovery recover_mask(const Gf2Matrix& m) {
  const std::vector<Bits> basis = nullspace(m);
  if (basis.empty()) {
    throw ContradictionError("recover_mask: rows have full rank, no nonzero mask fits");
  }
  if (basis.size() > 1) return {RecoveryStatus::underdetermined, std::nullopt};
  return {RecoveryStatus::unique, basis.front()};
}

}  // namespace aqp
