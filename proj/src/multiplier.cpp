#include "sqg/multiplier.hpp"

#include <cmath>

namespace sqg {

SpectralField apply_multiplier(const SpectralField& u, const Multiplier& m) {
  if (m.mean_zero_only && !u.mean_zero())
    throw DomainError("multiplier '" + m.name +
                      "' is mean-zero-only but coeff(0) != 0");
  const Grid& g = u.grid();
  SpectralField out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = m.symbol(g.wavevector(i)) * u[i];
  return out;
}

std::vector<double> tabulate_real(
    const Grid& g, const std::function<double(double)>& radial) {
  std::vector<double> t(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    t[i] = radial(g.wavevector(i).mod);
  return t;
}

Multiplier fractional_laplacian_multiplier(double alpha) {
  return {"|D|^" + std::to_string(alpha),
          [alpha](const Wavevector& w) -> std::complex<double> {
            return std::pow(w.mod, alpha);
          },
          false};
}

Multiplier semigroup_multiplier(double alpha, double t) {
  return {"exp(-t|D|^a)",
          [alpha, t](const Wavevector& w) -> std::complex<double> {
            return std::exp(-t * std::pow(w.mod, alpha));
          },
          false};
}

Multiplier riesz_multiplier(int j) {
  return {"R" + std::to_string(j),
          [j](const Wavevector& w) -> std::complex<double> {
            if (w.mod == 0.0 || w.nyquist) return 0.0;
            const double kj = j == 1 ? w.k1 : w.k2;
            return std::complex<double>(0.0, kj / w.mod);
          },
          true};
}

Multiplier derivative_multiplier(int j) {
  return {"d/dx" + std::to_string(j),
          [j](const Wavevector& w) -> std::complex<double> {
            if (j == 1 ? w.nyq1 : w.nyq2) return 0.0;
            return std::complex<double>(0.0, j == 1 ? w.k1 : w.k2);
          },
          false};
}

Multiplier inverse_modulus_multiplier() {
  return {"|D|^-1",
          [](const Wavevector& w) -> std::complex<double> {
            return w.mod == 0.0 ? 0.0 : 1.0 / w.mod;
          },
          true};
}

std::pair<SpectralField, SpectralField> riesz_velocity(
    const SpectralField& theta) {
  if (!theta.mean_zero())
    throw DomainError("riesz_velocity requires a mean-zero field");
  SpectralField v1 = apply_multiplier(theta, riesz_multiplier(2));
  v1 *= -1.0;
  SpectralField v2 = apply_multiplier(theta, riesz_multiplier(1));
  return {std::move(v1), std::move(v2)};
}

PhysicalField rescale(const PhysicalField& theta, double lambda,
                      double alpha) {
  if (!(lambda >= 1.0) || std::rint(lambda) != lambda)
    throw UnsupportedScaleError("lambda must be 2^j with integer j >= 0");
  const long lam = static_cast<long>(lambda);
  if ((lam & (lam - 1)) != 0)
    throw UnsupportedScaleError("lambda must be 2^j with integer j >= 0");

  const Grid& g = theta.grid();
  const double amp = std::pow(lambda, alpha - 1.0);
  PhysicalField out(g);
  const int n2 = g.extent2();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const int j1 = static_cast<int>((lam * i1) % g.n);
    for (int i2 = 0; i2 < n2; ++i2) {
      const int j2 = g.dim == 2 ? static_cast<int>((lam * i2) % g.n) : 0;
      out.at(i1, i2) = amp * theta.at(j1, j2);
    }
  }
  return out;
}

int dealias_cutoff(int n) { return (n - 1) / 3; }

SpectralField dealias(const SpectralField& u) {
  const Grid& g = u.grid();
  const int kc = dealias_cutoff(g.n);
  SpectralField out = u;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = g.wavevector(i);
    if (std::abs(w.m1) > kc || std::abs(w.m2) > kc) out[i] = 0.0;
  }
  return out;
}

SpectralField resample(const SpectralField& u, int n_new) {
  const Grid& g = u.grid();
  Grid g2(n_new, g.length, g.dim);
  SpectralField out(g2);
  const int half = std::min(g.n, n_new) / 2;
  const int lo = -half, hi = half - 1;
  if (g.dim == 1) {
    for (int m = lo; m <= hi; ++m) out.set_coeff(m, 0, u.coeff(m, 0));
  } else {
    for (int m1 = lo; m1 <= hi; ++m1)
      for (int m2 = lo; m2 <= hi; ++m2)
        out.set_coeff(m1, m2, u.coeff(m1, m2));
  }
  return out;
}

}  // namespace sqg
