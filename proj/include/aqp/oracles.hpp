#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aqp/errors.hpp"
#include "aqp/qstate.hpp"
#include "aqp/random.hpp"

namespace aqp {

inline constexpr int kMaxMaskBits = 62;
/// Largest n for which a Simon table is materialized or checked exhaustively.
inline constexpr int kMaxTableBits = 20;
inline constexpr int kMaxScrambleBits = 21;

inline int hamming(Bits y, Bits z) { return std::popcount(y ^ z); }

inline void check_input(int n, Bits w, const char* what) {
  if (w >> n) {
    throw DomainError(std::string(what) + ": input " + std::to_string(w) + " is not an " +
                      std::to_string(n) + "-bit integer");
  }
}

/// Hidden string of the Bernstein-Vazirani problem. a = 0 is allowed.
struct BvMask {
  int n = 1;
  Bits a = 0;

  BvMask() = default;
  BvMask(int bits, Bits mask) : n(bits), a(mask) {
    if (bits < 1 || bits > kMaxMaskBits) throw DomainError("BvMask: n out of range");
    check_input(bits, mask, "BvMask");
  }
};

/// f(w) = parity of (w AND a).
inline int bv_eval(const BvMask& mask, Bits w) {
  check_input(mask.n, w, "bv_eval");
  return std::popcount(w & mask.a) & 1;
}

/**
 * Two-to-one function g : {0,1}^n -> {0,1}^(n-1) constant exactly on the
 * cosets {w, w ^ a}.
 *
 * Canonical form: rep(w) is whichever coset member has the pivot bit clear,
 * and g(w) is rep(w) with the pivot bit deleted. An optional seeded
 * permutation relabels the outputs.
 */
class SimonOracle {
 public:
  int n() const noexcept { return n_; }
  Bits mask() const noexcept { return a_; }
  int pivot_bit() const noexcept { return pivot_; }
  std::optional<std::uint64_t> scramble_seed() const noexcept { return scramble_seed_; }
  bool has_table() const noexcept { return !table_.empty(); }
  std::span<const Bits> table() const noexcept { return table_; }

  Bits operator()(Bits w) const {
    check_input(n_, w, "simon_eval");
    if (!table_.empty()) return table_[w];
    return canonical(w);
  }

  // Wraps an arbitrary table (for promise checking, including broken tables).
  static SimonOracle from_table(int n, Bits a, std::vector<Bits> table) {
    if (n < 2 || n > kMaxTableBits) throw DomainError("SimonOracle::from_table: n out of range");
    if (table.size() != (std::size_t{1} << n)) {
      throw ShapeError("SimonOracle::from_table: table must have 2^n entries");
    }
    check_input(n, a, "SimonOracle::from_table");
    SimonOracle oracle;
    oracle.n_ = n;
    oracle.a_ = a;
    oracle.pivot_ = a == 0 ? -1 : std::countr_zero(a);
    oracle.table_ = std::move(table);
    return oracle;
  }

  friend SimonOracle simon_build(int n, Bits a, std::optional<std::uint64_t> scramble_seed);

 private:
  Bits canonical(Bits w) const {
    const Bits rep = bit_of(w, pivot_) ? (w ^ a_) : w;
    const Bits low = rep & ((Bits{1} << pivot_) - 1);
    const Bits high = rep >> (pivot_ + 1);
    const Bits label = (high << pivot_) | low;
    return permutation_.empty() ? label : permutation_[label];
  }

  int n_ = 0;
  Bits a_ = 0;
  int pivot_ = -1;
  std::optional<std::uint64_t> scramble_seed_;
  std::vector<Bits> permutation_;
  std::vector<Bits> table_;
};

inline SimonOracle simon_build(int n, Bits a, std::optional<std::uint64_t> scramble_seed = {}) {
  if (n < 2 || n > kMaxMaskBits) throw DomainError("simon_build: n must lie in [2, 62]");
  if (a == 0) {
    throw PromiseError("simon_build: a = 0 would require an injective map into a smaller set");
  }
  check_input(n, a, "simon_build");

  SimonOracle oracle;
  oracle.n_ = n;
  oracle.a_ = a;
  oracle.pivot_ = std::countr_zero(a);
  oracle.scramble_seed_ = scramble_seed;
  if (scramble_seed) {
    if (n > kMaxScrambleBits) throw CapacityError("simon_build: scrambling capped at n = 21");
    oracle.permutation_.resize(std::size_t{1} << (n - 1));
    std::iota(oracle.permutation_.begin(), oracle.permutation_.end(), Bits{0});
    RandomSource rng(*scramble_seed);
    std::shuffle(oracle.permutation_.begin(), oracle.permutation_.end(), rng);
  }
  if (n <= kMaxTableBits) {
    std::vector<Bits> table(std::size_t{1} << n);
    for (Bits w = 0; w < table.size(); ++w) table[w] = oracle.canonical(w);
    oracle.table_ = std::move(table);
  }
  return oracle;
}

inline Bits simon_eval(const SimonOracle& oracle, Bits w) { return oracle(w); }

struct PromiseReport {
  bool holds = true;
  std::optional<std::pair<Bits, Bits>> witness;
};

/// Exhaustive check of "g(w) = g(y) iff w ^ y = a" (n <= 20).
inline PromiseReport verify_promise(const SimonOracle& oracle) {
  const int n = oracle.n();
  if (n > kMaxTableBits) throw CapacityError("verify_promise: exhaustive check capped at n = 20");
  const Bits inputs = Bits{1} << n;
  const Bits outputs = Bits{1} << (n - 1);
  constexpr Bits kUnseen = ~Bits{0};

  // Pass 1: distinct outputs only on xor-partners.
  std::vector<Bits> first_seen(outputs, kUnseen);
  for (Bits w = 0; w < inputs; ++w) {
    const Bits g = oracle(w);
    if (g >= outputs) return {false, std::pair{w, w}};
    if (first_seen[g] == kUnseen) {
      first_seen[g] = w;
    } else if ((first_seen[g] ^ w) != oracle.mask()) {
      return {false, std::pair{first_seen[g], w}};
    }
  }
  // Pass 2: xor-partners share an output.
  for (Bits w = 0; w < inputs; ++w) {
    if (oracle(w) != oracle(w ^ oracle.mask())) return {false, std::pair{w, w ^ oracle.mask()}};
  }
  return {};
}

}  // namespace aqp
