#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/multiplier.hpp"

namespace sqg {

/// Besov norm descriptor: l^m over blocks q of 2^{qs} ||Delta_q u||_{L^p}.
/// p and m live in [1, inf]; homogeneous sums all lattice-active q,
/// inhomogeneous uses the low-frequency ball block at q = -1.
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double m = 1.0;
  bool homogeneous = true;
};

/// l^m norm of a nonnegative sequence (m = inf is the max).
double lm_norm(std::span<const double> values, double m);

/// Dyadic partition of unity built from the exp(-1/x) transition:
/// chi = 1 on {r <= 3/4}, 0 on {r >= 4/3}; phi(r) = chi(r/2) - chi(r),
/// supported in {3/4 <= r <= 8/3}. Power-of-two argument scaling is exact,
/// so the telescoping identities hold to rounding at every lattice point.
class DyadicFamily {
 public:
  explicit DyadicFamily(const Grid& g);

  const Grid& grid() const { return grid_; }
  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }

  static double phi(double r);
  static double chi(double r);

  /// phi(|k| / 2^q) tabulated over the lattice.
  const std::vector<double>& block_table(int q) const;
  /// true when block q has any nonzero lattice weight.
  bool active(int q) const;
  std::vector<int> active_blocks() const;

  /// Delta_q u (ring projector).
  SpectralField block(const SpectralField& u, int q) const;
  /// S_level u = chi(2^{-level} D) u; the zero mode carries chi(0) = 1, so
  /// this is the inhomogeneous low-pass (on mean-zero fields the two
  /// conventions coincide).
  SpectralField lowpass(const SpectralField& u, int level) const;

 private:
  Grid grid_;
  int q_min_ = 0;
  int q_max_ = 0;
  std::vector<std::vector<double>> tables_;
  std::vector<bool> active_;
};

DyadicFamily build_family(const Grid& g);

enum class DecompositionMode { homogeneous, inhomogeneous };

/// The indexed family {Delta_q u} plus the low-frequency rest.
struct DyadicDecomposition {
  DecompositionMode mode = DecompositionMode::homogeneous;
  std::map<int, SpectralField> blocks;
  std::optional<SpectralField> low;       // inhomogeneous Delta_{-1}
  std::complex<double> dropped_mean = 0;  // homogeneous zero mode, reported
};

DyadicDecomposition decompose(const SpectralField& u, const DyadicFamily& fam,
                              DecompositionMode mode);

/// Sum of blocks (+ low, or + dropped mean) for reconstruction checks.
SpectralField reconstruct(const DyadicDecomposition& dec, const Grid& g);

double besov_norm(const SpectralField& u, const BesovSpec& spec,
                  const DyadicFamily& fam);

/// ||Delta_q u||_{L^p} for every active q at several exponents p at once
/// (one inverse transform per block).
std::map<int, std::vector<double>> block_lp_norms(const SpectralField& u,
                                                  const DyadicFamily& fam,
                                                  std::span<const double> ps);

/// Finite-difference characterization of the homogeneous Besov norm,
/// 0 < s < 1: quadrature of ||u(.-x) - u||_{L^p}^m |x|^{-sm-d} over all
/// nonzero lattice shifts with the periodic distance |x|.
double besov_norm_finite_difference(const PhysicalField& u, double s,
                                    double p, double m);

/// || d^k Delta_q u ||_{L^b} / (2^{q(k + d(1/a-1/b))} ||Delta_q u||_{L^a})
/// with the numerator maximized over multi-indices of order k. The input
/// must already be ring-supported (apply Delta_q first).
double bernstein_ratio(const SpectralField& u, int q, int k, double a,
                       double b);

/// Same ratio with |D|^alpha in place of the integer derivative.
double bernstein_ratio_frac(const SpectralField& u, int q, double alpha,
                            double a, double b);

/// Paraproducts and remainder of u*v over dyadic blocks; every product is
/// formed in physical space and dealiased identically, so
/// T_uv + T_vu + R equals the dealiased product of the dealiased inputs.
struct BonyParts {
  SpectralField T_uv;  // sum_q S_{q-1}u . Delta_q v
  SpectralField T_vu;
  SpectralField R;  // sum_{|q-q'|<=1} Delta_q u . Delta_{q'} v
};

BonyParts bony_decompose(const SpectralField& u, const SpectralField& v,
                         const DyadicFamily& fam);

/// dealias(forward(inverse(u) * inverse(v))), the product both Bony sides
/// are compared against.
SpectralField dealiased_product(const SpectralField& u,
                                const SpectralField& v);

}  // namespace sqg
