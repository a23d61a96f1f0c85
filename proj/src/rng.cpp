#include "sqg/rng.hpp"

#include <cmath>

#include "sqg/transform.hpp"

namespace sqg {

double CounterRng::gauss(std::uint64_t i) const {
  const double u1 = uniform(2 * i);
  const double u2 = uniform(2 * i + 1);
  // guard the log against u1 == 0
  const double r = std::sqrt(-2.0 * std::log(u1 + 0x1.0p-60));
  return r * std::cos(kTwoPi * u2);
}

PhysicalField white_noise(const Grid& g, std::uint64_t seed) {
  CounterRng rng(seed);
  PhysicalField u(g);
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = rng.gauss(i);
  return u;
}

SpectralField random_band_field(const Grid& g, std::uint64_t seed,
                                double k_lo, double k_hi, double slope) {
  SpectralField uh = forward(white_noise(g, seed));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = g.wavevector(i);
    if (w.mod < k_lo || w.mod > k_hi || w.mod == 0.0)
      uh[i] = 0.0;
    else if (slope != 0.0)
      uh[i] *= std::pow(w.mod, slope);
  }
  uh.project_mean_zero();
  return uh;
}

}  // namespace sqg
