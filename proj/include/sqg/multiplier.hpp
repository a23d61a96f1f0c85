#pragma once

#include <functional>
#include <string>
#include <utility>

#include "sqg/field.hpp"

namespace sqg {

/// Fourier multiplier: a symbol over the wavenumber lattice plus a label.
/// Symbols singular at xi=0 are declared mean-zero-only and define
/// symbol(0) = 0; they may only act on mean-zero fields.
struct Multiplier {
  std::string name;
  std::function<std::complex<double>(const Wavevector&)> symbol;
  bool mean_zero_only = false;
};

/// coeff_out(k) = symbol(k) * coeff_in(k). Throws DomainError when a
/// mean-zero-only multiplier meets a field with coeff(0) != 0.
SpectralField apply_multiplier(const SpectralField& u, const Multiplier& m);

/// Real symbol tabulated over the lattice (hot paths avoid the
/// std::function indirection).
std::vector<double> tabulate_real(const Grid& g,
                                  const std::function<double(double)>& radial);

// --- standard symbols -------------------------------------------------

/// |D|^alpha. With alpha = 0 this is the identity (|0|^0 = 1): the alpha=0
/// equation keeps unit-strength damping of every mode, which is not the
/// same as dropping the dissipative term.
Multiplier fractional_laplacian_multiplier(double alpha);

/// exp(-t |D|^alpha), the dissipative semigroup.
Multiplier semigroup_multiplier(double alpha, double t);

/// Riesz transform R_j, symbol i k_j / |k| (j in {1,2}); mean-zero-only.
/// Odd symbols vanish on the unmatched Nyquist lines so real fields map
/// to real fields.
Multiplier riesz_multiplier(int j);

/// d/dx_j, symbol i k_j; vanishes on the j-th Nyquist line.
Multiplier derivative_multiplier(int j);

/// |D|^{-1}; mean-zero-only.
Multiplier inverse_modulus_multiplier();

// --- velocity law and scaling -----------------------------------------

/// v = (-R_2 theta, R_1 theta); requires a mean-zero theta. The result is
/// divergence-free to rounding.
std::pair<SpectralField, SpectralField> riesz_velocity(
    const SpectralField& theta);

/// theta_lambda(x) = lambda^(alpha-1) * theta(lambda x) sampled on the same
/// grid with periodic wrap; lambda must be 2^j, j >= 0 integer.
PhysicalField rescale(const PhysicalField& theta, double lambda, double alpha);

/// Two-thirds-rule cutoff floor((n-1)/3): with both factors in band the
/// retained product modes are alias-free.
int dealias_cutoff(int n);

/// Zero all modes with any |m_i| > dealias_cutoff(n).
SpectralField dealias(const SpectralField& u);

/// Spectral resample onto an n_new grid (zero-pad or truncate).
SpectralField resample(const SpectralField& u, int n_new);

}  // namespace sqg
