#pragma once

#include <cstdint>

#include "sqg/field.hpp"

namespace sqg {

/// Counter-based SplitMix64 stream: draw i of stream `seed` is a pure
/// function of (seed, i), so corpora are reproducible independently of
/// evaluation order and platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t i) const {
    std::uint64_t z = seed_ + (i + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 significant bits.
  double uniform(std::uint64_t i) const {
    return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on draws (2i, 2i+1).
  double gauss(std::uint64_t i) const;

 private:
  std::uint64_t seed_;
};

/// White-noise physical field: independent unit normals per grid point.
PhysicalField white_noise(const Grid& g, std::uint64_t seed);

/// Mean-zero random field with spectrum confined to k_lo <= |k| <= k_hi
/// and radial profile |k|^slope; Hermitian by construction (spectral
/// filter of a real white-noise field).
SpectralField random_band_field(const Grid& g, std::uint64_t seed,
                                double k_lo, double k_hi,
                                double slope = 0.0);

}  // namespace sqg
