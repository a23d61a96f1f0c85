#pragma once

#include "sqg/field.hpp"

namespace sqg {

/// Forward transform; coeff(k) = mean of u * exp(-i k.x), so a constant
/// field maps to coeff(0) = c and single modes read off directly.
SpectralField forward(const PhysicalField& u);

/// Inverse transform, u(x) = sum_k coeff(k) exp(i k.x); returns the real
/// part (callers keep Hermitian data by construction).
PhysicalField inverse(const SpectralField& u);

/// Unnormalized c2c transforms on raw buffers (FFT layout). Thread-safe.
void fft_forward_raw(const Grid& g, const std::complex<double>* in,
                     std::complex<double>* out);
void fft_backward_raw(const Grid& g, const std::complex<double>* in,
                      std::complex<double>* out);

}  // namespace sqg
