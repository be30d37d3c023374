#pragma once

#include <cstdint>
#include <random>

namespace cdasim {

// Deterministic RNG used throughout the simulator. All sampling goes through
// explicit helpers (rather than std:: distributions, whose output is
// implementation-defined) so replays are byte-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Derives an independent substream seed from (seed, stream index).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  static std::uint64_t mix(std::uint64_t x);  // splitmix64 finalizer
  std::mt19937_64 eng_;
};

}  // namespace cdasim
