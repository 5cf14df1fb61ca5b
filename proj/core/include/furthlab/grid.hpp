#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace furthlab {

/// Uniform 1D grid with n_points >= 2. dx is derived.
struct Grid1D {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_points = 2;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double point(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double span() const { return x_max - x_min; }

  std::vector<double> points() const {
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) xs[i] = point(i);
    return xs;
  }

  static Grid1D centered(double half_width, std::size_t n) {
    return Grid1D{-half_width, half_width, n};
  }

  void validate() const {
    if (n_points < 2) throw std::domain_error("Grid1D: n_points must be >= 2");
    if (!(x_max > x_min)) throw std::domain_error("Grid1D: x_max must exceed x_min");
  }

  bool operator==(const Grid1D&) const = default;
};

/// Trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> values, double dx);
std::complex<double> trapezoid(std::span<const std::complex<double>> values, double dx);

/// Non-negative probability density on a grid; normalize() enforces unit mass.
struct DensityField {
  Grid1D grid;
  std::vector<double> values;

  double total_mass() const;
  double centroid() const;
  double variance() const;
  /// Rescales to unit trapezoid mass. Throws if the mass is not positive.
  void normalize();
};

/// Complex amplitudes on a grid; normalize() enforces unit L2 norm.
struct WaveFunction {
  Grid1D grid;
  std::vector<std::complex<double>> values;

  double norm() const;  // sqrt(trapezoid |psi|^2)
  void normalize();
  /// <x> and <x^2> - <x>^2 of |psi|^2 (normalized internally).
  double position_mean() const;
  double position_variance() const;
};

/// Unit-mass Gaussian density exp(-(x-mu)^2/(2 sigma^2)).
DensityField gaussian_density(const Grid1D& grid, double mu, double sigma);
/// L2-normalized Gaussian packet exp(-(x-mu)^2/(4 sigma^2) + i k0 x); <x^2>-<x>^2 = sigma^2.
WaveFunction gaussian_packet(const Grid1D& grid, double mu, double sigma, double k0 = 0.0);

}  // namespace furthlab
