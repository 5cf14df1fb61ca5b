#include "furthlab/grid.hpp"

#include <cmath>

#include "furthlab/numerics.hpp"

namespace furthlab {

double trapezoid(std::span<const double> values, double dx) {
  if (values.size() < 2) return 0.0;
  double s = pairwise_sum(values);
  s -= 0.5 * (values.front() + values.back());
  return s * dx;
}

std::complex<double> trapezoid(std::span<const std::complex<double>> values, double dx) {
  if (values.size() < 2) return {0.0, 0.0};
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  return {trapezoid(re, dx), trapezoid(im, dx)};
}

double DensityField::total_mass() const { return trapezoid(values, grid.dx()); }

double DensityField::centroid() const {
  std::vector<double> xw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) xw[i] = grid.point(i) * values[i];
  return trapezoid(xw, grid.dx()) / total_mass();
}

double DensityField::variance() const {
  const double mu = centroid();
  std::vector<double> x2w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = grid.point(i) - mu;
    x2w[i] = d * d * values[i];
  }
  return trapezoid(x2w, grid.dx()) / total_mass();
}

void DensityField::normalize() {
  const double m = total_mass();
  if (!(m > 0.0)) throw std::domain_error("DensityField::normalize: non-positive mass");
  for (auto& v : values) v /= m;
}

double WaveFunction::norm() const {
  std::vector<double> a(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) a[i] = std::norm(values[i]);
  return std::sqrt(trapezoid(a, grid.dx()));
}

void WaveFunction::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::domain_error("WaveFunction::normalize: zero norm");
  for (auto& v : values) v /= n;
}

double WaveFunction::position_mean() const {
  std::vector<double> xw(values.size()), w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    w[i] = std::norm(values[i]);
    xw[i] = grid.point(i) * w[i];
  }
  return trapezoid(xw, grid.dx()) / trapezoid(w, grid.dx());
}

double WaveFunction::position_variance() const {
  const double mu = position_mean();
  std::vector<double> x2w(values.size()), w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    w[i] = std::norm(values[i]);
    const double d = grid.point(i) - mu;
    x2w[i] = d * d * w[i];
  }
  return trapezoid(x2w, grid.dx()) / trapezoid(w, grid.dx());
}

DensityField gaussian_density(const Grid1D& grid, double mu, double sigma) {
  DensityField w{grid, std::vector<double>(grid.n_points)};
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double d = (grid.point(i) - mu) / sigma;
    w.values[i] = std::exp(-0.5 * d * d);
  }
  w.normalize();
  return w;
}

WaveFunction gaussian_packet(const Grid1D& grid, double mu, double sigma, double k0) {
  WaveFunction psi{grid, std::vector<std::complex<double>>(grid.n_points)};
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    const double d = (x - mu);
    psi.values[i] = std::polar(std::exp(-d * d / (4.0 * sigma * sigma)), k0 * x);
  }
  psi.normalize();
  return psi;
}

}  // namespace furthlab
