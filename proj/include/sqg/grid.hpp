#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "sqg/errors.hpp"

namespace sqg {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// One point of the wavenumber lattice, in physical units (scaled by 2*pi/L).
struct Wavevector {
  double k1 = 0.0;
  double k2 = 0.0;
  double mod = 0.0;  // |k|
  int m1 = 0;        // integer lattice indices in [-n/2, n/2)
  int m2 = 0;
  bool nyq1 = false;  // on the unmatched m1 = -n/2 line
  bool nyq2 = false;
  bool nyquist = false;  // nyq1 || nyq2
};

/// Uniform periodic grid on [0,L)^d with the standard FFT wavenumber layout.
struct Grid {
  int n = 0;
  double length = kTwoPi;
  int dim = 2;

  Grid() = default;

  Grid(int n_, double length_ = kTwoPi, int dim_ = 2)
      : n(n_), length(length_), dim(dim_) {
    if (n < 16 || (n & (n - 1)) != 0)
      throw ConfigError("grid size must be a power of two >= 16, got " +
                        std::to_string(n));
    if (dim < 1 || dim > 2)
      throw ConfigError("grid dimension must be 1 or 2");
    if (!(length > 0.0)) throw ConfigError("grid length must be positive");
  }

  bool operator==(const Grid& o) const {
    return n == o.n && length == o.length && dim == o.dim;
  }

  std::size_t size() const {
    return dim == 2 ? std::size_t(n) * n : std::size_t(n);
  }
  int extent2() const { return dim == 2 ? n : 1; }
  double spacing() const { return length / n; }
  double k_unit() const { return kTwoPi / length; }
  /// Uniform quadrature weight (L/n)^d of one grid cell.
  double cell_volume() const { return std::pow(spacing(), dim); }
  /// Largest |k| on the lattice.
  double k_max() const {
    const double half = (n / 2) * k_unit();
    return dim == 2 ? half * std::numbers::sqrt2 : half;
  }
  /// Smallest nonzero |k| on the lattice.
  double k_min_nonzero() const { return k_unit(); }

  int signed_index(int i) const { return i < n / 2 ? i : i - n; }

  std::size_t flat(int i1, int i2) const {
    return std::size_t(i1) * extent2() + i2;
  }

  Wavevector wavevector(std::size_t flat_index) const {
    const int n2 = extent2();
    const int i1 = static_cast<int>(flat_index / n2);
    const int i2 = static_cast<int>(flat_index % n2);
    Wavevector w;
    w.m1 = signed_index(i1);
    w.m2 = dim == 2 ? signed_index(i2) : 0;
    w.k1 = w.m1 * k_unit();
    w.k2 = w.m2 * k_unit();
    w.mod = std::hypot(w.k1, w.k2);
    w.nyq1 = w.m1 == -n / 2;
    w.nyq2 = dim == 2 && w.m2 == -n / 2;
    w.nyquist = w.nyq1 || w.nyq2;
    return w;
  }

  double coord(int i) const { return i * spacing(); }
};

}  // namespace sqg
