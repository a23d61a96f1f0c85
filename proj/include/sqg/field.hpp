#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Real-valued samples of a scalar field on the uniform periodic grid,
/// row-major (first axis slowest).
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(const Grid& g) : grid_(g), v_(g.size(), 0.0) {}
  PhysicalField(const Grid& g, std::vector<double> values)
      : grid_(g), v_(std::move(values)) {
    if (v_.size() != g.size()) throw ConfigError("field size mismatch");
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  double& at(int i1, int i2) { return v_[grid_.flat(i1, i2)]; }
  double at(int i1, int i2) const { return v_[grid_.flat(i1, i2)]; }
  const std::vector<double>& values() const { return v_; }

  bool all_finite() const {
    return std::all_of(v_.begin(), v_.end(),
                       [](double x) { return std::isfinite(x); });
  }

  PhysicalField& operator+=(const PhysicalField& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  PhysicalField& operator-=(const PhysicalField& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  PhysicalField& operator*=(double a) {
    for (double& x : v_) x *= a;
    return *this;
  }

 private:
  Grid grid_;
  std::vector<double> v_;
};

/// Complex Fourier coefficients on the integer wavenumber lattice in the
/// standard FFT layout; coeff(k) is the mean of u * exp(-i k.x).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid_(g), c_(g.size(), 0.0) {}
  SpectralField(const Grid& g, std::vector<std::complex<double>> coeffs)
      : grid_(g), c_(std::move(coeffs)) {
    if (c_.size() != g.size()) throw ConfigError("field size mismatch");
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return c_.size(); }
  std::complex<double>* data() { return c_.data(); }
  const std::complex<double>* data() const { return c_.data(); }
  std::complex<double>& operator[](std::size_t i) { return c_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<std::complex<double>>& coeffs() const { return c_; }

  /// Coefficient at integer wavenumber (m1, m2), wrapping negatives.
  std::complex<double> coeff(int m1, int m2 = 0) const {
    return c_[index_of(m1, m2)];
  }
  void set_coeff(int m1, int m2, std::complex<double> v) {
    c_[index_of(m1, m2)] = v;
  }

  /// The zero mode is exactly zero.
  bool mean_zero() const { return c_[0] == std::complex<double>(0.0, 0.0); }
  void project_mean_zero() { c_[0] = 0.0; }

  bool all_finite() const {
    return std::all_of(c_.begin(), c_.end(), [](std::complex<double> z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  SpectralField& operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  SpectralField& operator*=(double a) {
    for (auto& z : c_) z *= a;
    return *this;
  }

  double l2() const {
    double s = 0.0;
    for (const auto& z : c_) s += std::norm(z);
    return std::sqrt(s);
  }

 private:
  std::size_t index_of(int m1, int m2) const {
    const int n = grid_.n;
    const int i1 = (m1 % n + n) % n;
    const int i2 = grid_.dim == 2 ? (m2 % n + n) % n : 0;
    return grid_.flat(i1, i2);
  }

  Grid grid_;
  std::vector<std::complex<double>> c_;
};

inline SpectralField operator+(SpectralField a, const SpectralField& b) {
  a += b;
  return a;
}
inline SpectralField operator-(SpectralField a, const SpectralField& b) {
  a -= b;
  return a;
}
inline SpectralField operator*(double s, SpectralField a) {
  a *= s;
  return a;
}
inline PhysicalField operator-(PhysicalField a, const PhysicalField& b) {
  a -= b;
  return a;
}
inline PhysicalField operator+(PhysicalField a, const PhysicalField& b) {
  a += b;
  return a;
}

/// Grid-quadrature L^p norm: uniform weights (L/n)^d, L^inf as grid max.
inline double lp_norm(const PhysicalField& u, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      m = std::max(m, std::abs(u[i]));
    return m;
  }
  double s = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i]);
  } else if (p == 2.0) {
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * u[i];
  } else {
    for (std::size_t i = 0; i < u.size(); ++i)
      s += std::pow(std::abs(u[i]), p);
  }
  return std::pow(s * u.grid().cell_volume(), 1.0 / p);
}

}  // namespace sqg
