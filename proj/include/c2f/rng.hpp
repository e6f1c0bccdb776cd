#pragma once

#include <cstdint>
#include <random>

namespace c2f {

/// Seeded random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the distribution transforms are
/// implemented here because the std:: distributions are
/// implementation-defined and would break seed reproducibility across
/// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Rejection sampling, unbiased.
  uint64_t uniform_index(uint64_t n);

  /// Standard normal via Box-Muller. Consumes exactly two engine draws.
  double gaussian();

 private:
  std::mt19937_64 gen_;
};

/// Derives an independent stream seed from a base seed. SplitMix64 finalizer.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

}  // namespace c2f
