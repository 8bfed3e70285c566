#pragma once

#include <cstdint>
#include <random>

namespace isogauge {

/// Seeded generator with a fixed, portable output sequence.
///
/// The engine is std::mt19937_64 (fully specified by the standard). Doubles
/// are formed from the top 53 bits, (x >> 11) * 2^-53, rather than through
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Seed for the k-th independent stream derived from `seed` (splitmix64).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace isogauge
