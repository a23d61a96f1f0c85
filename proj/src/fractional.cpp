#include "sqg/fractional.hpp"

#include <cmath>

#include "sqg/rng.hpp"
#include "sqg/transform.hpp"

namespace sqg {

SpectralField frac_laplacian_spectral(const SpectralField& u, double alpha) {
  return apply_multiplier(u, fractional_laplacian_multiplier(alpha));
}

namespace {

/// Kernel samples w(s) = h^d / |s|_per^{d+alpha} on nonzero shifts.
std::vector<double> e1_kernel(const Grid& g, double alpha) {
  std::vector<double> w(g.size(), 0.0);
  const double L = g.length;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const int i1 = static_cast<int>(i) / g.extent2();
    const int i2 = static_cast<int>(i) % g.extent2();
    const double d1 = std::min(g.coord(i1), L - g.coord(i1));
    const double d2 =
        g.dim == 2 ? std::min(g.coord(i2), L - g.coord(i2)) : 0.0;
    const double dist = std::hypot(d1, d2);
    w[i] = g.cell_volume() / std::pow(dist, g.dim + alpha);
  }
  return w;
}

}  // namespace

PhysicalField frac_laplacian_singular_integral(const PhysicalField& u,
                                               double alpha, double c_alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("singular-integral form needs 0 < alpha < 1");
  const Grid& g = u.grid();
  const std::vector<double> w = e1_kernel(g, alpha);
  double w_total = 0.0;
  for (double x : w) w_total += x;

  // sum_s (u(x) - u(x-s)) w(s) = W0 u(x) - (w * u)(x); the circular
  // convolution is evaluated spectrally (exact for the same sum).
  std::vector<std::complex<double>> wc(g.size()), uc(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    wc[i] = w[i];
    uc[i] = u[i];
  }
  std::vector<std::complex<double>> wh(g.size()), uh(g.size());
  fft_forward_raw(g, wc.data(), wh.data());
  fft_forward_raw(g, uc.data(), uh.data());
  for (std::size_t i = 0; i < g.size(); ++i) uh[i] *= wh[i];
  std::vector<std::complex<double>> conv(g.size());
  fft_backward_raw(g, uh.data(), conv.data());
  const double inv_n = 1.0 / static_cast<double>(g.size());

  PhysicalField out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = c_alpha * (w_total * u[i] - conv[i].real() * inv_n);
  return out;
}

double e1_analytic_constant(int dim, double alpha) {
  return alpha * std::pow(2.0, alpha - 1.0) *
         std::tgamma((dim + alpha) / 2.0) /
         (std::pow(std::numbers::pi, dim / 2.0) *
          std::tgamma(1.0 - alpha / 2.0));
}

E1Calibration calibrate_c_alpha(const Grid& g, double alpha,
                                std::uint64_t seed, int n_fields,
                                double band_lo, double band_hi) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n_fields; ++i) {
    SpectralField uh = random_band_field(g, seed + i, band_lo, band_hi);
    PhysicalField u = inverse(uh);
    PhysicalField K = frac_laplacian_singular_integral(u, alpha, 1.0);
    PhysicalField S = inverse(frac_laplacian_spectral(uh, alpha));
    for (std::size_t j = 0; j < g.size(); ++j) {
      num += K[j] * S[j];
      den += K[j] * K[j];
    }
  }
  E1Calibration cal;
  cal.alpha = alpha;
  cal.c_fit = num / den;
  cal.c_analytic = e1_analytic_constant(g.dim, alpha);

  SpectralField uh = random_band_field(g, seed + 7777, band_lo, band_hi);
  PhysicalField u = inverse(uh);
  PhysicalField K =
      frac_laplacian_singular_integral(u, alpha, cal.c_fit);
  PhysicalField S = inverse(frac_laplacian_spectral(uh, alpha));
  cal.heldout_rel_l2 = lp_norm(K - S, 2.0) / lp_norm(S, 2.0);
  return cal;
}

SpectralField semigroup_spectral(const SpectralField& u,
                                 const SemigroupSpec& spec) {
  return apply_multiplier(u, semigroup_multiplier(spec.alpha, spec.t));
}

namespace {

/// Ring cutoff equal to 1 on supp phi = {3/4 <= r <= 8/3}, supported in
/// {5/8 <= r <= 3.2}, same bump transitions as the family profile.
double ring_bar(double r) {
  auto rise = [](double x) {  // 0 below 0, 1 above 1
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
  };
  return rise((r - 0.625) / (0.75 - 0.625)) *
         (1.0 - rise((r - 8.0 / 3.0) / (3.2 - 8.0 / 3.0)));
}

}  // namespace

double semigroup_kernel_l1(const SemigroupSpec& spec, int q) {
  // Auxiliary grid: box of 32 periods so the polynomially decaying kernel
  // is captured; 256 points resolve the xi-support |xi| <= 3.2.
  const int n_aux = 256;
  const double L_aux = 32.0 * kTwoPi;
  Grid aux(n_aux, L_aux, 2);
  const double lam_alpha = std::pow(std::pow(2.0, q), spec.alpha);

  SpectralField kh(aux);
  for (std::size_t i = 0; i < aux.size(); ++i) {
    const Wavevector w = aux.wavevector(i);
    kh[i] = ring_bar(w.mod) *
            std::exp(-spec.t * lam_alpha * std::pow(w.mod, spec.alpha));
  }
  // h(x) = (2pi)^{-d} int phibar e^{-t lam^a |xi|^a} e^{i<x,xi>} dxi;
  // the lattice sum approximates the integral with weight (2pi/L)^d.
  PhysicalField h = inverse(kh);
  const double xi_cell = std::pow(aux.k_unit(), 2) / std::pow(kTwoPi, 2);
  double l1 = 0.0;
  for (std::size_t i = 0; i < aux.size(); ++i) l1 += std::abs(h[i]);
  return l1 * aux.cell_volume() * xi_cell;
}

// --- maps ----------------------------------------------------------------

MeasurePreservingMap::MeasurePreservingMap(Kind kind)
    : kind_(std::make_shared<const Kind>(std::move(kind))) {}

MeasurePreservingMap MeasurePreservingMap::identity() {
  return MeasurePreservingMap(IdentityMap{});
}
MeasurePreservingMap MeasurePreservingMap::translation(double a1, double a2) {
  return MeasurePreservingMap(TranslationMap{a1, a2});
}
MeasurePreservingMap MeasurePreservingMap::rotation(double angle) {
  return MeasurePreservingMap(RotationMap{angle});
}
MeasurePreservingMap MeasurePreservingMap::shear(
    int axis, std::function<double(double)> g, double max_abs_slope) {
  return MeasurePreservingMap(ShearMap{axis, std::move(g), max_abs_slope});
}
MeasurePreservingMap MeasurePreservingMap::composed(
    std::vector<MeasurePreservingMap> maps) {
  return MeasurePreservingMap(ComposedMap{std::move(maps)});
}

namespace {

/// Operator norm of the unit shear matrix I + c e_i (x) e_j.
double shear_lip(double c) {
  const double a = std::abs(c);
  return 0.5 * (a + std::sqrt(a * a + 4.0));
}

}  // namespace

double MeasurePreservingMap::lip_forward() const {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ShearMap>)
          return shear_lip(k.max_abs_slope);
        else if constexpr (std::is_same_v<T, ComposedMap>) {
          double l = 1.0;
          for (const auto& m : k.maps) l *= m.lip_forward();
          return l;  // submultiplicative upper bound
        } else
          return 1.0;
      },
      *kind_);
}

double MeasurePreservingMap::lip_inverse() const {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ShearMap>)
          return shear_lip(k.max_abs_slope);  // inverse shear has slope -g'
        else if constexpr (std::is_same_v<T, ComposedMap>) {
          double l = 1.0;
          for (const auto& m : k.maps) l *= m.lip_inverse();
          return l;
        } else
          return 1.0;
      },
      *kind_);
}

std::pair<double, double> MeasurePreservingMap::at(double x1, double x2,
                                                   double length) const {
  return std::visit(
      [&](const auto& k) -> std::pair<double, double> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return {x1, x2};
        } else if constexpr (std::is_same_v<T, TranslationMap>) {
          return {x1 + k.a1, x2 + k.a2};
        } else if constexpr (std::is_same_v<T, RotationMap>) {
          const double c = std::cos(k.angle), s = std::sin(k.angle);
          return {c * x1 - s * x2, s * x1 + c * x2};
        } else if constexpr (std::is_same_v<T, ShearMap>) {
          if (k.axis == 1) return {x1 + k.g(x2), x2};
          return {x1, x2 + k.g(x1)};
        } else {
          double y1 = x1, y2 = x2;
          for (auto it = k.maps.rbegin(); it != k.maps.rend(); ++it)
            std::tie(y1, y2) = it->at(y1, y2, length);
          return {y1, y2};
        }
      },
      *kind_);
}

namespace {

PhysicalField roll(const PhysicalField& u, int s1, int s2) {
  const Grid& g = u.grid();
  PhysicalField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    const int j1 = ((i1 + s1) % g.n + g.n) % g.n;
    for (int i2 = 0; i2 < g.extent2(); ++i2) {
      const int j2 = g.dim == 2 ? ((i2 + s2) % g.n + g.n) % g.n : 0;
      out.at(i1, i2) = u.at(j1, j2);
    }
  }
  return out;
}

/// Translate by an arbitrary vector via the spectral phase e^{i k.a}.
PhysicalField translate(const PhysicalField& u, double a1, double a2) {
  const Grid& g = u.grid();
  const double h = g.spacing();
  const double r1 = a1 / h, r2 = a2 / h;
  // grid vectors reduce to an exact circular shift
  if (std::abs(r1 - std::rint(r1)) < 1e-12 &&
      std::abs(r2 - std::rint(r2)) < 1e-12)
    return roll(u, static_cast<int>(std::rint(r1)),
                static_cast<int>(std::rint(r2)));

  SpectralField uh = forward(u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = g.wavevector(i);
    uh[i] *= std::exp(std::complex<double>(0.0, w.k1 * a1 + w.k2 * a2));
  }
  return inverse(uh);
}

/// Quarter-turn index permutation: psi(x) = R x (about the origin, mod L).
PhysicalField rotate_quarter(const PhysicalField& u, int quarters) {
  const Grid& g = u.grid();
  PhysicalField out(g);
  const int n = g.n;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      int j1 = i1, j2 = i2;
      for (int r = 0; r < quarters; ++r) {
        // (x, y) -> (-y, x): sample index of the argument
        const int t1 = (n - j2) % n;
        const int t2 = j1;
        j1 = t1;
        j2 = t2;
      }
      out.at(i1, i2) = u.at(j1, j2);
    }
  return out;
}

/// u(x + g(y), y) by per-line spectral translation (1-D transforms).
PhysicalField shear_apply(const PhysicalField& u, const ShearMap& sh) {
  const Grid& g = u.grid();
  if (g.dim != 2) throw UnsupportedMapError("shear needs a 2-D grid");
  const int n = g.n;
  Grid line(n, g.length, 1);
  PhysicalField out(g);

  std::vector<std::complex<double>> buf(n), hat(n), shifted(n);
  if (sh.axis == 1) {
    for (int j = 0; j < n; ++j) {  // fixed y = coord(j): translate in x
      for (int i = 0; i < n; ++i) buf[i] = u.at(i, j);
      fft_forward_raw(line, buf.data(), hat.data());
      const double a = sh.g(g.coord(j));
      for (int i = 0; i < n; ++i) {
        const double k = line.signed_index(i) * g.k_unit();
        hat[i] *= std::exp(std::complex<double>(0.0, k * a)) /
                  static_cast<double>(n);
      }
      fft_backward_raw(line, hat.data(), shifted.data());
      for (int i = 0; i < n; ++i) out.at(i, j) = shifted[i].real();
    }
  } else {
    for (int i = 0; i < n; ++i) {  // fixed x = coord(i): translate in y
      for (int j = 0; j < n; ++j) buf[j] = u.at(i, j);
      fft_forward_raw(line, buf.data(), hat.data());
      const double a = sh.g(g.coord(i));
      for (int j = 0; j < n; ++j) {
        const double k = line.signed_index(j) * g.k_unit();
        hat[j] *= std::exp(std::complex<double>(0.0, k * a)) /
                  static_cast<double>(n);
      }
      fft_backward_raw(line, hat.data(), shifted.data());
      for (int j = 0; j < n; ++j) out.at(i, j) = shifted[j].real();
    }
  }
  return out;
}

}  // namespace

PhysicalField compose_with_map(const PhysicalField& u,
                               const MeasurePreservingMap& psi) {
  return std::visit(
      [&](const auto& k) -> PhysicalField {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return u;
        } else if constexpr (std::is_same_v<T, TranslationMap>) {
          return translate(u, k.a1, k.a2);
        } else if constexpr (std::is_same_v<T, RotationMap>) {
          const double q = k.angle / (0.5 * std::numbers::pi);
          if (std::abs(q - std::rint(q)) > 1e-12)
            throw UnsupportedMapError(
                "rotation must be a multiple of pi/2 on the square lattice");
          const int quarters = ((static_cast<int>(std::rint(q))) % 4 + 4) % 4;
          return rotate_quarter(u, quarters);
        } else if constexpr (std::is_same_v<T, ShearMap>) {
          return shear_apply(u, k);
        } else {
          // u o (m1 o m2 o ...) = (...((u o m1) o m2) ...)
          PhysicalField r = u;
          for (const auto& m : k.maps) r = compose_with_map(r, m);
          return r;
        }
      },
      psi.kind());
}

CommutatorResult commutator_frac_composition(const PhysicalField& u,
                                             const MeasurePreservingMap& psi,
                                             double alpha, double p,
                                             const DyadicFamily& fam) {
  SpectralField uh = forward(u);
  uh.project_mean_zero();
  const int d = u.grid().dim;

  PhysicalField comp = compose_with_map(inverse(uh), psi);
  SpectralField comp_h = forward(comp);
  PhysicalField lhs_a = inverse(frac_laplacian_spectral(comp_h, alpha));
  PhysicalField lhs_b =
      compose_with_map(inverse(frac_laplacian_spectral(uh, alpha)), psi);

  CommutatorResult r;
  r.lhs = lp_norm(lhs_a - lhs_b, p);
  const double lf = psi.lip_forward(), li = psi.lip_inverse();
  const double factor = std::max(std::abs(1.0 - std::pow(li, d + alpha)),
                                 std::abs(1.0 - std::pow(lf, -d - alpha)));
  r.bound = factor * std::pow(lf, alpha) *
            besov_norm(uh, BesovSpec{alpha, p, 1.0, true}, fam);
  return r;
}

double vishik_block_transfer(const SpectralField& f,
                             const MeasurePreservingMap& psi, int j, int q,
                             double p, const DyadicFamily& fam) {
  PhysicalField fq = inverse(fam.block(f, q));
  SpectralField comp = forward(compose_with_map(fq, psi));
  return lp_norm(inverse(fam.block(comp, j)), p);
}

}  // namespace sqg
