#pragma once

#include <cstdint>
#include <random>

namespace devlearn {

// SplitMix64 finalizer over (seed, stream). All derived seeds in the project
// (per-sequence generation, per-epoch shuffles) come from this exact function,
// so reproducing a dataset or a run only requires the top-level seed.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic generator with a fully specified algorithm: std::mt19937_64
// produces an identical stream on every conforming platform. The helpers
// below replace std::*_distribution, whose output is implementation-defined
// and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform over [0, n). Exact when n is a power of two (all command spaces
  // here are); the modulo bias for other n is below 2^-50 at the sizes used.
  std::uint64_t index(std::uint64_t n) { return gen_() % n; }

  // Uniform over [0, 1) using the top 53 bits.
  double real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform over [-limit, limit].
  double symmetric(double limit) { return limit * (2.0 * real() - 1.0); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace devlearn
