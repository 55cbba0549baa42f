#pragma once

#include <cstdint>
#include <random>

namespace starcut {

/// Seedable 64-bit generator (std::mt19937_64, whose output sequence is fixed
/// by the standard). Floating-point draws map the top 53 bits directly so the
/// stream is bit-identical across platforms; std::uniform_real_distribution
/// is implementation-defined and deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, bound). Modulo bias is negligible for the small
  /// bounds used here and keeps the draw count per call fixed.
  std::uint64_t next_below(std::uint64_t bound) { return engine_() % bound; }

  bool next_bool() { return (engine_() >> 63) & 1u; }

  /// Derive an independent substream seed (splitmix64 finalizer).
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace starcut
