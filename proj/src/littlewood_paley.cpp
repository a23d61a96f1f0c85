#include "sqg/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

#include "sqg/transform.hpp"

namespace sqg {
namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

SpectralField apply_table(const SpectralField& u,
                          const std::vector<double>& t) {
  SpectralField out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = t[i] * u[i];
  return out;
}

}  // namespace

double lm_norm(std::span<const double> values, double m) {
  if (m == kInf) {
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, v);
    return mx;
  }
  double s = 0.0;
  if (m == 1.0) {
    for (double v : values) s += v;
    return s;
  }
  for (double v : values) s += std::pow(v, m);
  return std::pow(s, 1.0 / m);
}

double DyadicFamily::chi(double r) {
  if (r <= 0.75) return 1.0;
  if (r >= 4.0 / 3.0) return 0.0;
  const double up = bump(4.0 / 3.0 - r);
  const double dn = bump(r - 0.75);
  return up / (up + dn);
}

double DyadicFamily::phi(double r) { return chi(0.5 * r) - chi(r); }

DyadicFamily::DyadicFamily(const Grid& g) : grid_(g) {
  q_min_ = static_cast<int>(std::floor(std::log2(g.k_min_nonzero()))) - 2;
  q_max_ = static_cast<int>(std::ceil(std::log2(g.k_max()))) + 2;

  tables_.reserve(q_max_ - q_min_ + 1);
  for (int q = q_min_; q <= q_max_; ++q) {
    std::vector<double> t(g.size());
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      t[i] = phi(std::ldexp(g.wavevector(i).mod, -q));
      any = any || t[i] != 0.0;
    }
    tables_.push_back(std::move(t));
    active_.push_back(any);
  }
}

const std::vector<double>& DyadicFamily::block_table(int q) const {
  return tables_.at(q - q_min_);
}

bool DyadicFamily::active(int q) const {
  if (q < q_min_ || q > q_max_) return false;
  return active_.at(q - q_min_);
}

std::vector<int> DyadicFamily::active_blocks() const {
  std::vector<int> qs;
  for (int q = q_min_; q <= q_max_; ++q)
    if (active(q)) qs.push_back(q);
  return qs;
}

SpectralField DyadicFamily::block(const SpectralField& u, int q) const {
  if (q < q_min_ || q > q_max_) return SpectralField(grid_);
  return apply_table(u, block_table(q));
}

SpectralField DyadicFamily::lowpass(const SpectralField& u, int level) const {
  SpectralField out(grid_);
  for (std::size_t i = 0; i < grid_.size(); ++i)
    out[i] = chi(std::ldexp(grid_.wavevector(i).mod, -level)) * u[i];
  return out;
}

DyadicFamily build_family(const Grid& g) { return DyadicFamily(g); }

DyadicDecomposition decompose(const SpectralField& u, const DyadicFamily& fam,
                              DecompositionMode mode) {
  DyadicDecomposition dec;
  dec.mode = mode;
  if (mode == DecompositionMode::homogeneous) {
    dec.dropped_mean = u[0];
    for (int q : fam.active_blocks()) dec.blocks.emplace(q, fam.block(u, q));
    for (auto& [q, b] : dec.blocks) b.project_mean_zero();
  } else {
    dec.low = fam.lowpass(u, 0);  // Delta_{-1} = chi(D)
    for (int q = 0; q <= fam.q_max(); ++q)
      if (fam.active(q)) dec.blocks.emplace(q, fam.block(u, q));
  }
  return dec;
}

SpectralField reconstruct(const DyadicDecomposition& dec, const Grid& g) {
  SpectralField sum(g);
  for (const auto& [q, b] : dec.blocks) sum += b;
  if (dec.mode == DecompositionMode::inhomogeneous) {
    if (dec.low) sum += *dec.low;
  } else {
    sum[0] += dec.dropped_mean;
  }
  return sum;
}

double besov_norm(const SpectralField& u, const BesovSpec& spec,
                  const DyadicFamily& fam) {
  if (spec.homogeneous && !u.mean_zero())
    throw DomainError("homogeneous Besov norm requires a mean-zero field");

  std::vector<double> terms;
  auto push = [&](int q, const SpectralField& b) {
    terms.push_back(std::pow(2.0, q * spec.s) * lp_norm(inverse(b), spec.p));
  };
  if (spec.homogeneous) {
    for (int q : fam.active_blocks()) push(q, fam.block(u, q));
  } else {
    push(-1, fam.lowpass(u, 0));
    for (int q = 0; q <= fam.q_max(); ++q)
      if (fam.active(q)) push(q, fam.block(u, q));
  }
  return lm_norm(terms, spec.m);
}

std::map<int, std::vector<double>> block_lp_norms(const SpectralField& u,
                                                  const DyadicFamily& fam,
                                                  std::span<const double> ps) {
  std::map<int, std::vector<double>> out;
  for (int q : fam.active_blocks()) {
    PhysicalField b = inverse(fam.block(u, q));
    std::vector<double> norms;
    norms.reserve(ps.size());
    for (double p : ps) norms.push_back(lp_norm(b, p));
    out.emplace(q, std::move(norms));
  }
  return out;
}

double besov_norm_finite_difference(const PhysicalField& u, double s, double p,
                                    double m) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("finite-difference norm needs 0 < s < 1");

  const Grid& g = u.grid();
  const int n = g.n;
  const int n2 = g.extent2();
  const double L = g.length;
  const double cell = g.cell_volume();

  double acc = 0.0;  // l^m accumulator (max if m = inf)
  std::vector<double> diff(g.size());
  for (int s1 = 0; s1 < n; ++s1) {
    const double x1 = std::min(g.coord(s1), L - g.coord(s1));
    for (int s2 = 0; s2 < n2; ++s2) {
      if (s1 == 0 && s2 == 0) continue;
      const double x2 =
          g.dim == 2 ? std::min(g.coord(s2), L - g.coord(s2)) : 0.0;
      const double dist = std::hypot(x1, x2);
      // u(. - x) - u(.), x the lattice shift (s1, s2)
      for (int i1 = 0; i1 < n; ++i1) {
        const int j1 = (i1 - s1 + n) % n;
        const std::size_t row = g.flat(i1, 0), srow = g.flat(j1, 0);
        for (int i2 = 0; i2 < n2; ++i2) {
          const int j2 = g.dim == 2 ? (i2 - s2 + n) % n : 0;
          diff[row + i2] = u[srow + j2] - u[row + i2];
        }
      }
      double nrm = 0.0;
      if (p == kInf) {
        for (double d : diff) nrm = std::max(nrm, std::abs(d));
      } else {
        double t = 0.0;
        for (double d : diff)
          t += p == 2.0 ? d * d
                        : (p == 1.0 ? std::abs(d) : std::pow(std::abs(d), p));
        nrm = std::pow(t * cell, 1.0 / p);
      }
      if (m == kInf)
        acc = std::max(acc, nrm / std::pow(dist, s));
      else
        acc += std::pow(nrm, m) * std::pow(dist, -s * m - g.dim) * cell;
    }
  }
  return m == kInf ? acc : std::pow(acc, 1.0 / m);
}

namespace {

double bernstein_ratio_impl(const SpectralField& u, int q, double order,
                            double a, double b,
                            const std::vector<Multiplier>& derivatives) {
  const double den_norm = lp_norm(inverse(u), a);
  if (den_norm == 0.0)
    throw UndefinedRatioError("bernstein ratio on an identically zero block");
  double num = 0.0;
  for (const auto& d : derivatives)
    num = std::max(num, lp_norm(inverse(apply_multiplier(u, d)), b));
  const int dim = u.grid().dim;
  const double expo = order + dim * (1.0 / a - 1.0 / b);
  return num / (std::pow(2.0, q * expo) * den_norm);
}

}  // namespace

double bernstein_ratio(const SpectralField& u, int q, int k, double a,
                       double b) {
  std::vector<Multiplier> derivs;
  if (k == 0) {
    derivs.push_back({"id",
                      [](const Wavevector&) -> std::complex<double> {
                        return 1.0;
                      },
                      false});
  } else {
    // all multi-indices (k - j, j) of order k
    for (int j = 0; j <= k; ++j) {
      const int k1 = k - j, k2 = j;
      if (u.grid().dim == 1 && k2 > 0) continue;
      derivs.push_back(
          {"d^" + std::to_string(k1) + "," + std::to_string(k2),
           [k1, k2](const Wavevector& w) -> std::complex<double> {
             if ((k1 > 0 && w.nyq1) || (k2 > 0 && w.nyq2)) return 0.0;
             std::complex<double> s = 1.0;
             for (int i = 0; i < k1; ++i) s *= std::complex<double>(0, w.k1);
             for (int i = 0; i < k2; ++i) s *= std::complex<double>(0, w.k2);
             return s;
           },
           false});
    }
  }
  return bernstein_ratio_impl(u, q, k, a, b, derivs);
}

double bernstein_ratio_frac(const SpectralField& u, int q, double alpha,
                            double a, double b) {
  return bernstein_ratio_impl(u, q, alpha, a, b,
                              {fractional_laplacian_multiplier(alpha)});
}

SpectralField dealiased_product(const SpectralField& u,
                                const SpectralField& v) {
  PhysicalField a = inverse(u);
  PhysicalField b = inverse(v);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return dealias(forward(a));
}

BonyParts bony_decompose(const SpectralField& u, const SpectralField& v,
                         const DyadicFamily& fam) {
  if (!u.mean_zero() || !v.mean_zero())
    throw DomainError("bony_decompose requires mean-zero fields");

  const Grid& g = u.grid();
  const SpectralField ud = dealias(u);
  const SpectralField vd = dealias(v);
  const std::vector<int> qs = [&] {
    std::vector<int> all;
    for (int q = fam.q_min(); q <= fam.q_max(); ++q)
      if (fam.active(q)) all.push_back(q);
    return all;
  }();

  std::map<int, PhysicalField> bu, bv;
  for (int q : qs) {
    bu.emplace(q, inverse(fam.block(ud, q)));
    bv.emplace(q, inverse(fam.block(vd, q)));
  }
  auto zero_phys = PhysicalField(g);
  auto block_of = [&](const std::map<int, PhysicalField>& m,
                      int q) -> const PhysicalField& {
    auto it = m.find(q);
    return it == m.end() ? zero_phys : it->second;
  };

  auto product = [&](const PhysicalField& a,
                     const PhysicalField& b) -> SpectralField {
    PhysicalField w(g);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a[i] * b[i];
    return dealias(forward(w));
  };

  // S_{q-1} as the running sum of blocks at or below q-2 (equals the chi
  // low-pass on the lattice up to rounding, and makes the three-part
  // reconstruction an exact regrouping of the block pairs).
  BonyParts parts{SpectralField(g), SpectralField(g), SpectralField(g)};
  PhysicalField Su(g), Sv(g);
  for (int q = fam.q_min(); q <= fam.q_max(); ++q) {
    if (q - 2 >= fam.q_min() && fam.active(q - 2)) {
      Su += block_of(bu, q - 2);
      Sv += block_of(bv, q - 2);
    }
    if (fam.active(q)) {
      parts.T_uv += product(Su, block_of(bv, q));
      parts.T_vu += product(Sv, block_of(bu, q));
      for (int i = -1; i <= 1; ++i)
        if (fam.active(q + i))
          parts.R += product(block_of(bu, q), block_of(bv, q + i));
    }
  }
  return parts;
}

}  // namespace sqg
