#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace aqp {

/**
 * Counter-based generator: draw k of stream (seed) is splitmix64(seed + k * gamma).
 * Identical seed and call sequence give identical draws. Satisfies
 * UniformRandomBitGenerator so the standard distributions can consume it.
 */
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed = 0) : seed_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix(seed_ + counter_ * kGamma);
  }

  // Independent stream for (this seed, index), e.g. one per trial or shot.
  RandomSource derive(std::uint64_t index) const {
    return RandomSource(mix(seed_ ^ mix(index + kGamma)));
  }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(*this); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(*this);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace aqp
