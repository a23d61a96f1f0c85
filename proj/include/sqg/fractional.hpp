#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "sqg/littlewood_paley.hpp"

namespace sqg {

/// |D|^alpha as the Fourier multiplier |k|^alpha (any alpha in [0,2];
/// zero mode maps to zero for alpha > 0).
SpectralField frac_laplacian_spectral(const SpectralField& u, double alpha);

/// |D|^alpha for 0 < alpha < 1 as the quadrature of
///   c_alpha * sum_{y != x} (u(x) - u(y)) / |x-y|_per^{d+alpha} * h^d
/// over the fundamental cell with the periodic distance. Evaluated as a
/// circular convolution (exact rewrite of the sum).
PhysicalField frac_laplacian_singular_integral(const PhysicalField& u,
                                               double alpha, double c_alpha);

/// Least-squares fit of c_alpha against the spectral operator on a family
/// of band-limited random fields, plus the held-out discrepancy.
struct E1Calibration {
  double alpha = 0.0;
  double c_fit = 0.0;
  double c_analytic = 0.0;   // alpha 2^{a-1} Gamma((d+a)/2) / (pi^{d/2} Gamma(1-a/2))
  double heldout_rel_l2 = 0.0;
};

E1Calibration calibrate_c_alpha(const Grid& g, double alpha,
                                std::uint64_t seed, int n_fields,
                                double band_lo, double band_hi);

/// Closed-form normalization constant of the d-dimensional singular
/// integral representation.
double e1_analytic_constant(int dim, double alpha);

struct SemigroupSpec {
  double alpha = 0.5;
  double t = 0.0;
};

/// exp(-t |D|^alpha) u.
SpectralField semigroup_spectral(const SpectralField& u,
                                 const SemigroupSpec& spec);

/// L^1 norm of the rescaled semigroup kernel for ring-supported data:
/// inverse transform of phibar(xi) exp(-t lambda^alpha |xi|^alpha) with
/// lambda = 2^q and phibar a ring cutoff equal to 1 on supp phi, computed
/// on a fine auxiliary grid.
double semigroup_kernel_l1(const SemigroupSpec& spec, int q);

// --- measure-preserving maps -------------------------------------------

struct IdentityMap {};
struct TranslationMap {
  double a1 = 0.0;
  double a2 = 0.0;
};
/// Rotation about the box center; only multiples of pi/2 keep the square
/// lattice invariant.
struct RotationMap {
  double angle = 0.0;
};
/// Axis shear: axis = 1 maps (x, y) -> (x + g(y), y); axis = 2 maps
/// (x, y) -> (x, y + g(x)). g must be L-periodic.
struct ShearMap {
  int axis = 1;
  std::function<double(double)> g;
  double max_abs_slope = 0.0;  // sup |g'|, supplied analytically
};

class MeasurePreservingMap;
struct ComposedMap {
  std::vector<MeasurePreservingMap> maps;  // applied right-to-left
};

/// Lipschitz measure-preserving homeomorphism of the torus, restricted to
/// kinds with unit Jacobian by construction.
class MeasurePreservingMap {
 public:
  using Kind = std::variant<IdentityMap, TranslationMap, RotationMap,
                            ShearMap, ComposedMap>;

  MeasurePreservingMap(Kind kind);  // NOLINT(google-explicit-constructor)

  static MeasurePreservingMap identity();
  static MeasurePreservingMap translation(double a1, double a2);
  static MeasurePreservingMap rotation(double angle);
  static MeasurePreservingMap shear(int axis, std::function<double(double)> g,
                                    double max_abs_slope);
  static MeasurePreservingMap composed(std::vector<MeasurePreservingMap> maps);

  const Kind& kind() const { return *kind_; }

  /// sup_x |grad psi| (operator norm); >= 1, exact per kind.
  double lip_forward() const;
  /// sup_x |grad psi^{-1}|.
  double lip_inverse() const;

  /// Evaluate psi at a point (periodic wrap applies on composition).
  std::pair<double, double> at(double x1, double x2, double length) const;

 private:
  std::shared_ptr<const Kind> kind_;
};

/// u(psi(x)) sampled on the grid by trigonometric interpolation (exact for
/// band-limited u up to rounding). Grid translations and quarter-turn
/// rotations reduce to index permutations; other rotations are rejected.
PhysicalField compose_with_map(const PhysicalField& u,
                               const MeasurePreservingMap& psi);

/// || |D|^a(u o psi) - (|D|^a u) o psi ||_{L^p} against the product
/// max(|1 - lip_inv^{d+a}|, |1 - lip_fwd^{-d-a}|) lip_fwd^a ||u||_{B^a_{p,1}}
/// evaluated with unit constant.
struct CommutatorResult {
  double lhs = 0.0;
  double bound = 0.0;
};

CommutatorResult commutator_frac_composition(const PhysicalField& u,
                                             const MeasurePreservingMap& psi,
                                             double alpha, double p,
                                             const DyadicFamily& fam);

/// ||Delta_j((Delta_q f) o psi)||_{L^p}; the harness compares it against
/// 2^{-|j-q|} lip^{sign(j-q)} ||Delta_q f||_{L^p}.
double vishik_block_transfer(const SpectralField& f,
                             const MeasurePreservingMap& psi, int j, int q,
                             double p, const DyadicFamily& fam);

}  // namespace sqg
