#include "furthlab/timeslice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "furthlab/fft.hpp"
#include "furthlab/numerics.hpp"

namespace furthlab::timeslice {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::complex<double> EvolutionConfig::normalization() const {
  const double modulus = std::sqrt(2.0 * kPi * constants.hbar * epsilon / constants.mass);
  return constants.phase == PhaseConvention::plus ? modulus * std::polar(1.0, kPi / 4)
                                                  : modulus * std::polar(1.0, -kPi / 4);
}

std::size_t required_points(const Grid1D& grid, double epsilon, const PhysicsConstants& c) {
  // adjacent-point phase step of exp(i m eta^2/(2 hbar eps)) at eta = span
  // must stay below pi: dx * (m * span / (hbar * eps)) <= pi
  const double span = grid.span();
  return static_cast<std::size_t>(std::ceil(span * span * c.mass / (kPi * c.hbar * epsilon))) + 1;
}

WaveFunction short_time_step(const WaveFunction& psi, const EvolutionConfig& config,
                             const PotentialSpec& potential) {
  psi.grid.validate();
  config.constants.validate();
  if (!(config.epsilon > 0.0)) throw std::domain_error("short_time_step: epsilon must be > 0");
  const std::size_t n = psi.grid.n_points;
  const double h = psi.grid.dx();
  const double m = config.constants.mass;
  const double hbar = config.constants.hbar;
  const double eps = config.epsilon;

  const double eta_max = config.eta_half_range > 0.0 ? config.eta_half_range : psi.grid.span();
  if (h * m * eta_max / (hbar * eps) > kPi * 1.0000001) {
    throw std::domain_error(
        "short_time_step: kinetic chirp unresolved on this grid (iteration would be "
        "unstable); need n_points >= " +
        std::to_string(required_points(psi.grid, eps, config.constants)) +
        " or a smaller eta_half_range");
  }
  if (config.mode == PotentialMode::expanded_first_order) {
    double u_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      u_max = std::max(u_max, std::abs(potential(psi.grid.point(i))));
    if (u_max * eps / hbar >= 0.1) {
      throw std::domain_error(
          "short_time_step: expanded mode requires max|U| eps/hbar < 0.1; use eps < " +
          std::to_string(0.1 * hbar / u_max));
    }
  }

  // Tables: the kinetic chirp depends on j - i only, the midpoint potential
  // factor on i + j only (midpoints live on the half grid).
  const double rate = m / (2.0 * hbar * eps);
  const double sign = config.constants.phase == PhaseConvention::plus ? 1.0 : -1.0;
  std::vector<double> kin_re(2 * n - 1), kin_im(2 * n - 1);
  for (std::size_t d = 0; d < 2 * n - 1; ++d) {
    const double eta = (static_cast<double>(d) - static_cast<double>(n - 1)) * h;
    double amp = 1.0;
    if (config.damping > 0.0) amp = std::exp(-config.damping * eta * eta);
    kin_re[d] = amp * std::cos(sign * rate * eta * eta);
    kin_im[d] = amp * std::sin(sign * rate * eta * eta);
  }
  std::vector<double> pot_re(2 * n - 1), pot_im(2 * n - 1);
  for (std::size_t s = 0; s < 2 * n - 1; ++s) {
    const double xm = psi.grid.x_min + static_cast<double>(s) * (h / 2.0);
    const double u = potential(xm);
    if (config.mode == PotentialMode::full_exponential) {
      pot_re[s] = std::cos(sign * eps * u / hbar);
      pot_im[s] = -std::sin(sign * eps * u / hbar);
    } else {  // 1 - i eps U / hbar
      pot_re[s] = 1.0;
      pot_im[s] = -sign * eps * u / hbar;
    }
  }
  std::vector<double> psi_re(n), psi_im(n);
  for (std::size_t j = 0; j < n; ++j) {
    psi_re[j] = psi.values[j].real();
    psi_im[j] = psi.values[j].imag();
  }

  const std::ptrdiff_t window =
      config.eta_half_range > 0.0
          ? static_cast<std::ptrdiff_t>(std::floor(config.eta_half_range / h))
          : static_cast<std::ptrdiff_t>(n);

  WaveFunction out{psi.grid, std::vector<std::complex<double>>(n)};
  const std::complex<double> pref = h / config.normalization();
  parallel_for(n, [&](std::size_t iu) {
    const auto i = static_cast<std::ptrdiff_t>(iu);
    const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(0, i - window);
    const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n) - 1, i + window);
    const double* kr = kin_re.data() + (n - 1 - i);
    const double* ki = kin_im.data() + (n - 1 - i);
    const double* pr = pot_re.data() + i;
    const double* pi = pot_im.data() + i;
    double acc_re = 0.0, acc_im = 0.0;
    for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j) {
      // w = kin * pot, acc += w * psi; trapezoid end weights on the eta range
      const double wr = kr[j] * pr[j] - ki[j] * pi[j];
      const double wi = kr[j] * pi[j] + ki[j] * pr[j];
      double vr = wr * psi_re[j] - wi * psi_im[j];
      double vi = wr * psi_im[j] + wi * psi_re[j];
      if (j == j_lo || j == j_hi) { vr *= 0.5; vi *= 0.5; }
      acc_re += vr;
      acc_im += vi;
    }
    out.values[iu] = pref * std::complex<double>(acc_re, acc_im);
  });
  return out;
}

EvolutionResult evolve(const WaveFunction& psi0, const EvolutionConfig& config,
                       const PotentialSpec& potential) {
  EvolutionResult result;
  result.snapshots.reserve(config.n_steps + 1);
  result.snapshots.push_back(psi0);
  double cumulative = 0.0;
  WaveFunction current = psi0;
  for (std::size_t s = 0; s < config.n_steps; ++s) {
    const double before = current.norm();
    current = short_time_step(current, config, potential);
    const double drift = std::abs(current.norm() - before);
    result.norm_drift.push_back(drift);
    cumulative += drift;
    if (cumulative > 1e-2) {
      throw std::runtime_error("evolve: cumulative norm drift " + std::to_string(cumulative) +
                               " exceeded 1e-2 after step " + std::to_string(s + 1));
    }
    if (config.renormalize_each_step) current.normalize();
    result.snapshots.push_back(current);
  }
  return result;
}

double schrodinger_residual(const std::vector<WaveFunction>& snapshots, double epsilon,
                            const PotentialSpec& potential, const PhysicsConstants& constants) {
  if (snapshots.size() < 3) throw std::invalid_argument("schrodinger_residual: need >= 3 snapshots");
  const auto& grid = snapshots.front().grid;
  const double h = grid.dx();
  const double hbar = constants.hbar;
  const double kin = hbar * hbar / (2.0 * constants.mass);
  // the minus convention evolves the conjugate equation
  const double sign = constants.phase == PhaseConvention::plus ? 1.0 : -1.0;
  double res_max = 0.0;
  for (std::size_t t = 1; t + 1 < snapshots.size(); ++t) {
    const auto& pm = snapshots[t - 1].values;
    const auto& p0 = snapshots[t].values;
    const auto& pp = snapshots[t + 1].values;
    for (std::size_t i = 1; i + 1 < grid.n_points; ++i) {
      const std::complex<double> dpsi_dt = (pp[i] - pm[i]) / (2.0 * epsilon);
      const std::complex<double> lap = (p0[i + 1] - 2.0 * p0[i] + p0[i - 1]) / (h * h);
      const std::complex<double> r = std::complex<double>(0.0, sign * hbar) * dpsi_dt +
                                     kin * lap - potential(grid.point(i)) * p0[i];
      res_max = std::max(res_max, std::abs(r));
    }
  }
  return res_max;
}

WaveFunction spectral_reference_evolve(const WaveFunction& psi0, const EvolutionConfig& config,
                                       const PotentialSpec& potential,
                                       std::size_t substeps_per_step) {
  const std::size_t n = psi0.grid.n_points;
  const double dt = config.epsilon / static_cast<double>(std::max<std::size_t>(1, substeps_per_step));
  const std::size_t total = config.n_steps * std::max<std::size_t>(1, substeps_per_step);
  const double hbar = config.constants.hbar;
  const double sign = config.constants.phase == PhaseConvention::plus ? 1.0 : -1.0;

  std::vector<std::complex<double>> half_v(n), full_t(n);
  for (std::size_t i = 0; i < n; ++i)
    half_v[i] = std::polar(1.0, -sign * 0.5 * dt * potential(psi0.grid.point(i)) / hbar);
  const auto ks = fft::angular_frequencies(n, psi0.grid.dx());
  for (std::size_t i = 0; i < n; ++i) {
    const double kinetic = hbar * ks[i] * ks[i] / (2.0 * config.constants.mass);
    full_t[i] = std::polar(1.0, -sign * dt * kinetic);
  }

  WaveFunction out = psi0;
  for (std::size_t s = 0; s < total; ++s) {
    for (std::size_t i = 0; i < n; ++i) out.values[i] *= half_v[i];
    fft::forward(out.values);
    for (std::size_t i = 0; i < n; ++i) out.values[i] *= full_t[i];
    fft::inverse(out.values);
    for (std::size_t i = 0; i < n; ++i) out.values[i] *= half_v[i];
  }
  return out;
}

}  // namespace furthlab::timeslice
