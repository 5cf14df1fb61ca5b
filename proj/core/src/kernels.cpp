#include "furthlab/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "furthlab/fft.hpp"
#include "furthlab/numerics.hpp"

namespace furthlab::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846;
// exp(-18.4) ~ 1e-8: window half-width R = sqrt(18.4/delta) bounds the damped
// integrand's tail below the composition tolerances.
constexpr double kDampingLogCut = 18.4;

std::complex<double> chirp(double x, double rate, PhaseConvention phase) {
  // exp(+i rate x^2) for plus, conjugate for minus
  const double arg = rate * x * x;
  return phase == PhaseConvention::plus ? std::polar(1.0, arg) : std::polar(1.0, -arg);
}
}  // namespace

double heat_kernel(double displacement, double tau, double diffusivity) {
  if (!(tau > 0.0)) throw std::domain_error("heat_kernel: tau must be > 0");
  if (!(diffusivity > 0.0)) throw std::domain_error("heat_kernel: D must be > 0");
  const double var = 4.0 * diffusivity * tau;
  return std::exp(-displacement * displacement / var) / std::sqrt(kPi * var);
}

std::complex<double> quantum_kernel(double displacement, double t,
                                    const PhysicsConstants& constants) {
  if (!(t > 0.0)) throw std::domain_error("quantum_kernel: t must be > 0");
  constants.validate();
  const double modulus = std::sqrt(constants.mass / (2.0 * kPi * constants.hbar * t));
  const double rate = constants.mass / (2.0 * constants.hbar * t);
  // sqrt(1/i) = e^{-i pi/4} on the principal branch
  const std::complex<double> branch =
      constants.phase == PhaseConvention::plus ? std::polar(1.0, -kPi / 4) : std::polar(1.0, kPi / 4);
  return modulus * branch * chirp(displacement, rate, constants.phase);
}

std::vector<double> default_test_displacements() { return {0.0, 0.5, 1.0, 2.0, 4.0}; }

namespace {

// Trapezoid of K(y-x1, t1) K(x2-y, t2) exp(-delta (y-center)^2) over
// [center-R, center+R] with n points.
std::complex<double> quantum_pair_integral(double x1, double x2, double t1, double t2,
                                           double delta, double center, double half_width,
                                           std::size_t n, const PhysicsConstants& c) {
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  std::vector<std::complex<double>> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = center - half_width + static_cast<double>(i) * h;
    const double eta = y - center;
    f[i] = quantum_kernel(y - x1, t1, c) * quantum_kernel(x2 - y, t2, c) *
           std::exp(-delta * eta * eta);
  }
  return trapezoid(std::span<const std::complex<double>>(f), h);
}

}  // namespace

double chapman_kolmogorov_residual(KernelKind kind, double tau_total, double split,
                                   const Grid1D& grid, double damping,
                                   const PhysicsConstants& constants,
                                   std::span<const double> test_displacements) {
  if (!(tau_total > 0.0)) throw std::domain_error("chapman_kolmogorov_residual: tau must be > 0");
  if (!(split > 0.0 && split < 1.0))
    throw std::domain_error("chapman_kolmogorov_residual: split must be in (0,1)");
  grid.validate();
  std::vector<double> defaults;
  if (test_displacements.empty()) {
    defaults = default_test_displacements();
    test_displacements = defaults;
  }
  const double t1 = split * tau_total;
  const double t2 = (1.0 - split) * tau_total;

  double residual = 0.0;
  if (kind == KernelKind::heat) {
    const double D = constants.diffusivity();
    const std::size_t n = grid.n_points;
    const double h = grid.dx();
    std::vector<double> f(n);
    for (double d : test_displacements) {
      const double x1 = -0.5 * d, x2 = 0.5 * d;
      for (std::size_t i = 0; i < n; ++i) {
        const double y = grid.point(i);
        f[i] = heat_kernel(y - x1, t1, D) * heat_kernel(x2 - y, t2, D);
        if (damping > 0.0) {
          const double eta = y - 0.5 * (x1 + x2);
          f[i] *= std::exp(-damping * eta * eta);
        }
      }
      residual = std::max(residual,
                          std::abs(trapezoid(f, h) - heat_kernel(x2 - x1, tau_total, D)));
    }
    return residual;
  }

  if (!(damping > 0.0))
    throw std::domain_error(
        "chapman_kolmogorov_residual: quantum kernel requires damping > 0 "
        "(undamped Fresnel quadrature does not converge)");
  // Damping window e^{-delta eta^2} is centered on the stationary-phase point
  // x* = (A x1 + B x2)/(A+B); off-center damping leaves an O(delta) phase bias
  // an order of magnitude larger.
  const double half_width = std::sqrt(kDampingLogCut / damping);
  const double rate1 = constants.mass / (2.0 * constants.hbar * t1);
  const double rate2 = constants.mass / (2.0 * constants.hbar * t2);
  const double tmin = std::min(t1, t2);
  // resolve the slice chirp out to the window edge, ~6 points per half cycle
  const double h_chirp = kPi * constants.hbar * tmin /
                         (3.0 * constants.mass * (half_width + 4.0));
  const double h = std::min(grid.dx(), h_chirp);
  const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * half_width / h)) + 1;
  for (double d : test_displacements) {
    const double x1 = -0.5 * d, x2 = 0.5 * d;
    const double center = (rate1 * x1 + rate2 * x2) / (rate1 + rate2);
    const auto integral =
        quantum_pair_integral(x1, x2, t1, t2, damping, center, half_width, n, constants);
    residual = std::max(residual,
                        std::abs(integral - quantum_kernel(x2 - x1, tau_total, constants)));
  }
  return residual;
}

KernelTable direct_kernel_table(KernelKind kind, double tau, const Grid1D& grid, double damping,
                                const PhysicsConstants& constants) {
  KernelTable table{grid, std::vector<std::complex<double>>(grid.n_points)};
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    std::complex<double> v = kind == KernelKind::heat
                                 ? std::complex<double>(heat_kernel(x, tau, constants.diffusivity()), 0.0)
                                 : quantum_kernel(x, tau, constants);
    if (damping > 0.0) v *= std::exp(-damping * x * x);
    table.values[i] = v;
  }
  return table;
}

namespace {

// Composes the slice kernel with itself n times by raising its DFT to the
// n-th power: linear convolution with trapezoid weights, valid while the
// composed kernels decay inside the padded window.
std::vector<std::complex<double>> compose_by_fft(const std::vector<std::complex<double>>& slice,
                                                 double h, std::size_t n_slices) {
  const std::size_t n = slice.size();
  std::vector<std::complex<double>> buf(n);
  // ifftshift: move the center sample (index n/2, x=0) to index 0
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) buf[i] = slice[(i + half) % n];
  fft::forward(buf);
  for (auto& v : buf) {
    std::complex<double> p(1.0, 0.0);
    for (std::size_t s = 0; s < n_slices; ++s) p *= v;
    v = p;
  }
  fft::inverse(buf);
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[(i + n - half) % n];  // fftshift
  const double scale = std::pow(h, static_cast<double>(n_slices - 1));
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace

KernelTable multi_slice_kernel(KernelKind kind, double tau_total, std::size_t n_slices,
                               const Grid1D& grid, double damping,
                               const PhysicsConstants& constants) {
  if (n_slices < 1) throw std::domain_error("multi_slice_kernel: n_slices must be >= 1");
  grid.validate();
  if (n_slices == 1) return direct_kernel_table(kind, tau_total, grid, damping, constants);
  if (kind == KernelKind::quantum && !(damping > 0.0))
    throw std::domain_error("multi_slice_kernel: quantum kernel requires damping > 0");

  const double t_slice = tau_total / static_cast<double>(n_slices);
  const double out_half = std::max(std::abs(grid.x_min), std::abs(grid.x_max));

  double window, h_target;
  if (kind == KernelKind::heat) {
    const double sigma_total = std::sqrt(2.0 * constants.diffusivity() * tau_total);
    window = out_half + 12.0 * sigma_total;
    h_target = std::min(grid.dx(), std::sqrt(2.0 * constants.diffusivity() * t_slice) / 8.0);
  } else {
    window = std::max(std::sqrt(kDampingLogCut / damping), 2.0 * out_half);
    h_target = std::min(grid.dx(), kPi * constants.hbar * t_slice / (3.0 * constants.mass * window));
  }
  // internal spacing divides the output spacing so output points land on nodes
  const std::size_t refine = static_cast<std::size_t>(std::ceil(grid.dx() / h_target));
  const double h = grid.dx() / static_cast<double>(refine);
  std::size_t n = fft::next_pow2(static_cast<std::size_t>(std::ceil(2.0 * window / h)) + 1);

  std::vector<std::complex<double>> slice(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) - static_cast<double>(half)) * h;
    std::complex<double> v =
        kind == KernelKind::heat
            ? std::complex<double>(heat_kernel(x, t_slice, constants.diffusivity()), 0.0)
            : quantum_kernel(x, t_slice, constants);
    if (damping > 0.0) v *= std::exp(-damping * x * x);
    slice[i] = v;
  }
  const auto composed = compose_by_fft(slice, h, n_slices);

  KernelTable table{grid, std::vector<std::complex<double>>(grid.n_points)};
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    const double pos = x / h + static_cast<double>(half);
    const auto idx = static_cast<std::ptrdiff_t>(std::llround(pos));
    if (idx >= 0 && static_cast<std::size_t>(idx) < n &&
        std::abs(pos - static_cast<double>(idx)) < 1e-9) {
      table.values[i] = composed[static_cast<std::size_t>(idx)];
    } else {
      // off-node output point: linear interpolation fallback
      auto lo = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
      lo = std::min(lo, n - 2);
      const double frac = pos - static_cast<double>(lo);
      table.values[i] = composed[lo] * (1.0 - frac) + composed[lo + 1] * frac;
    }
  }
  return table;
}

PropagatedDensity propagate_density(const DensityField& w0, double tau, double diffusivity) {
  if (!(tau > 0.0)) throw std::domain_error("propagate_density: tau must be > 0");
  w0.grid.validate();
  const std::size_t n = w0.grid.n_points;
  const double h = w0.grid.dx();
  PropagatedDensity out;
  out.density.grid = w0.grid;
  out.density.values.assign(n, 0.0);
  // zero padding outside the grid; trapezoid end weights on the source
  parallel_for(n, [&](std::size_t i) {
    const double xi = w0.grid.point(i);
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j)
      f[j] = w0.values[j] * heat_kernel(xi - w0.grid.point(j), tau, diffusivity);
    out.density.values[i] = trapezoid(f, h);
  });
  out.mass_defect = std::abs(1.0 - out.density.total_mass());
  out.leakage_warning = out.mass_defect > 1e-6;
  return out;
}

PropagatedWave propagate_wavefunction(const WaveFunction& psi0, double t,
                                      const PhysicsConstants& constants, double damping) {
  if (!(t > 0.0)) throw std::domain_error("propagate_wavefunction: t must be > 0");
  psi0.grid.validate();
  constants.validate();
  const std::size_t n = psi0.grid.n_points;
  PropagatedWave out;
  out.wave.grid = psi0.grid;
  out.wave.values = psi0.values;

  // Exact Fourier symbol of the (optionally damped) kernel:
  //   K_hat(k) = sqrt(pi/(delta - i a)) / A * exp(-k^2/(4 (delta - i a)))
  // with a = m/(2 hbar t); delta -> 0 recovers exp(-i hbar t k^2 / 2m).
  const double a = constants.mass / (2.0 * constants.hbar * t);
  const std::complex<double> c =
      constants.phase == PhaseConvention::plus
          ? std::complex<double>(damping, -a)
          : std::complex<double>(damping, a);
  const std::complex<double> A =
      constants.phase == PhaseConvention::plus
          ? std::sqrt(kPi / std::complex<double>(0.0, -a))
          : std::sqrt(kPi / std::complex<double>(0.0, a));
  const std::complex<double> prefactor = std::sqrt(kPi / c) / A;

  fft::forward(out.wave.values);
  const auto ks = fft::angular_frequencies(n, psi0.grid.dx());
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = ks[i] * ks[i];
    out.wave.values[i] *= prefactor * std::exp(-k2 / (4.0 * c));
  }
  fft::inverse(out.wave.values);
  out.norm_defect = std::abs(1.0 - out.wave.norm());
  out.leakage_warning = out.norm_defect > 1e-6;
  return out;
}

DensityField fokker_planck_step(const DensityField& w, std::span<const double> drift,
                                double diffusivity, double dt) {
  w.grid.validate();
  if (drift.size() != w.grid.n_points)
    throw std::invalid_argument("fokker_planck_step: drift size must match grid");
  const double h = w.grid.dx();
  const double dt_max = h * h / (4.0 * diffusivity);
  if (dt > dt_max)
    throw std::domain_error("fokker_planck_step: explicit stability requires dt <= dx^2/(4D) = " +
                            std::to_string(dt_max));
  const std::size_t n = w.grid.n_points;
  // face fluxes F_{i+1/2} = <Wv> - D dW/dx, zero flux through the boundaries
  std::vector<double> flux(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w_face = 0.5 * (w.values[i] + w.values[i + 1]);
    const double v_face = 0.5 * (drift[i] + drift[i + 1]);
    flux[i] = w_face * v_face - diffusivity * (w.values[i + 1] - w.values[i]) / h;
  }
  DensityField out{w.grid, w.values};
  // boundary cells span h/2, which makes the zero-flux update conserve the
  // trapezoid mass exactly
  out.values[0] -= dt * flux[0] / (0.5 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out.values[i] -= dt * (flux[i] - flux[i - 1]) / h;
  out.values[n - 1] += dt * flux[n - 2] / (0.5 * h);
  return out;
}

std::complex<double> damped_kernel_integral(KernelKind kind, double tau, double damping,
                                            const Grid1D& grid, const PhysicsConstants& constants) {
  if (kind == KernelKind::heat) {
    std::vector<std::complex<double>> f(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      const double x = grid.point(i);
      f[i] = heat_kernel(x, tau, constants.diffusivity()) *
             (damping > 0.0 ? std::exp(-damping * x * x) : 1.0);
    }
    return trapezoid(std::span<const std::complex<double>>(f), grid.dx());
  }
  if (!(damping > 0.0))
    throw std::domain_error("damped_kernel_integral: quantum kernel requires damping > 0");
  const double half_width = std::sqrt(kDampingLogCut / damping);
  const double h_chirp =
      kPi * constants.hbar * tau / (3.0 * constants.mass * (half_width + 1.0));
  const double h = std::min(grid.dx(), h_chirp);
  const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * half_width / h)) + 1;
  std::vector<std::complex<double>> f(n);
  const double hh = 2.0 * half_width / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -half_width + static_cast<double>(i) * hh;
    f[i] = quantum_kernel(x, tau, constants) * std::exp(-damping * x * x);
  }
  return trapezoid(std::span<const std::complex<double>>(f), hh);
}

}  // namespace furthlab::kernels
