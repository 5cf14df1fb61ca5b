#include "furthlab/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "furthlab/fft.hpp"
#include "furthlab/numerics.hpp"

namespace furthlab::wkb {

LocalMomentum local_momentum(double energy, const PotentialSpec& potential, double x,
                             const PhysicsConstants& constants) {
  constants.validate();
  const double gap = energy - potential(x);
  LocalMomentum p;
  if (gap >= 0.0) {
    p.value = std::sqrt(2.0 * constants.mass * gap);
    p.regime = Regime::allowed;
  } else {
    p.value = std::sqrt(-2.0 * constants.mass * gap);
    p.regime = Regime::forbidden;
  }
  return p;
}

TurningPoints find_turning_points(double energy, const PotentialSpec& potential, double x_lo,
                                  double x_hi, const PhysicsConstants& constants,
                                  std::size_t scan_points) {
  (void)constants;
  TurningPoints tp;
  tp.energy = energy;
  const double h = (x_hi - x_lo) / static_cast<double>(scan_points - 1);
  auto gap = [&](double x) { return energy - potential(x); };
  double prev = gap(x_lo);
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double x = x_lo + static_cast<double>(i) * h;
    const double cur = gap(x);
    if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) {
      double a = x - h, b = x;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        if ((gap(a) < 0.0) == (gap(mid) < 0.0)) a = mid;
        else b = mid;
      }
      tp.points.push_back(0.5 * (a + b));
    }
    prev = cur;
  }
  return tp;
}

namespace {

// tanh-sinh (double exponential) quadrature over [a, b]; handles integrable
// endpoint singularities such as the sqrt vanishing of p at a turning point.
template <typename F>
double tanh_sinh(F f, double a, double b, std::size_t max_evals, double rel_tol = 1e-12) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double pi_half = 1.57079632679489661923;
  auto node = [&](double t, double& x, double& w) {
    const double sh = std::sinh(t);
    const double th = std::tanh(pi_half * sh);
    x = c + r * th;
    const double ch = std::cosh(pi_half * sh);
    w = r * pi_half * std::cosh(t) / (ch * ch);
  };
  double x, w;
  node(0.0, x, w);
  double sum = f(x) * w;
  std::size_t evals = 1;
  // level 0: unit-spaced nodes; each refinement adds the odd multiples of h/2
  double h = 1.0;
  for (double t = h; t < 3.8; t += h) {
    for (double s : {t, -t}) {
      node(s, x, w);
      if (w < 1e-300) continue;
      sum += f(x) * w;
      ++evals;
    }
  }
  double prev = sum * h;
  for (int level = 1; level < 12; ++level) {
    double added = 0.0;
    for (double t = 0.5 * h; t < 3.8; t += h) {
      for (double s : {t, -t}) {
        node(s, x, w);
        if (w < 1e-300) continue;
        added += f(x) * w;
        ++evals;
      }
    }
    sum += added;
    h *= 0.5;
    const double current = sum * h;
    if (level > 2 && std::abs(current - prev) <= rel_tol * std::abs(current)) return current;
    if (evals >= max_evals) return current;
    prev = current;
  }
  return prev;
}

}  // namespace

ActionIntegrals action_integrals(double energy, const PotentialSpec& potential, double a,
                                 double b, std::size_t n_quad,
                                 const PhysicsConstants& constants) {
  if (!(b >= a)) throw std::invalid_argument("action_integrals: need b >= a");
  ActionIntegrals out;
  if (a == b) return out;

  // the interval must sit inside a single regime (turning points may only be
  // endpoints); probe interior samples
  int sign_seen = 0;
  for (int i = 1; i < 64; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / 64.0;
    const double gap = energy - potential(x);
    if (gap == 0.0) continue;
    const int s = gap > 0.0 ? 1 : -1;
    if (sign_seen == 0) sign_seen = s;
    else if (s != sign_seen)
      throw std::domain_error("action_integrals: interval straddles a turning point; split first");
  }

  auto p_abs = [&](double x) { return local_momentum(energy, potential, x, constants).value; };
  out.s_real = tanh_sinh(p_abs, a, b, std::max<std::size_t>(n_quad, 64));

  const std::size_t samples = std::min<std::size_t>(std::max<std::size_t>(n_quad, 8), 257);
  out.sample_x.resize(samples);
  out.amplitude_log.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = a + (b - a) * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    out.sample_x[i] = x;
    out.amplitude_log[i] = 0.5 * std::log(p_abs(x));
  }
  return out;
}

WkbMatching WkbMatching::cosine_form(double amplitude) {
  WkbMatching m;
  const std::complex<double> half(0.5 * amplitude, 0.0);
  m.c1 = half * std::polar(1.0, -3.14159265358979323846 / 4.0);
  m.c2 = half * std::polar(1.0, 3.14159265358979323846 / 4.0);
  return m;
}

WkbWave wkb_wavefunction(double energy, const PotentialSpec& potential, const Grid1D& grid,
                         const WkbMatching& matching, const PhysicsConstants& constants,
                         double guard_fraction) {
  grid.validate();
  WkbWave out;
  out.wave.grid = grid;
  out.wave.values.assign(grid.n_points, {0.0, 0.0});
  out.mask.assign(grid.n_points, 0);
  out.turning_points = find_turning_points(energy, potential, grid.x_min, grid.x_max, constants);

  const double hbar = constants.hbar;
  // layout: [forbidden] a [allowed] b [forbidden]; no turning points means a
  // single regime covering the whole grid
  double a = grid.x_min, b = grid.x_max;
  bool has_left = false, has_right = false;
  if (out.turning_points.points.size() >= 2) {
    a = out.turning_points.points.front();
    b = out.turning_points.points.back();
    has_left = has_right = true;
  } else if (out.turning_points.points.size() == 1) {
    // single crossing: allowed on the side where E > U
    const double t = out.turning_points.points.front();
    if (energy > potential(t - 1e-6 * grid.span())) { b = t; has_right = true; }
    else { a = t; has_left = true; }
  }
  out.guard_width = guard_fraction * (b - a);

  // cumulative action on the grid within each region (trapezoid)
  const std::size_t n = grid.n_points;
  std::vector<double> pval(n);
  std::vector<int> regime(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto lm = local_momentum(energy, potential, grid.point(i), constants);
    pval[i] = lm.value;
    regime[i] = lm.regime == Regime::allowed ? 1 : -1;
  }
  // allowed-region action S(x) = int_a^x p dx
  std::vector<double> action(n, 0.0);
  {
    double s = 0.0;
    double prev_x = a, prev_p = local_momentum(energy, potential, a, constants).value;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.point(i);
      const bool inside = (x > a || (!has_left && x >= a)) && (x < b || (!has_right && x <= b));
      if (!inside) continue;
      s += 0.5 * (prev_p + pval[i]) * (x - prev_x);
      action[i] = s;
      prev_x = x;
      prev_p = pval[i];
    }
  }
  // forbidden tails: S measured from the adjacent turning point
  std::vector<double> action_left(n, 0.0), action_right(n, 0.0);
  if (has_left) {
    double s = 0.0;
    double prev_x = a, prev_p = 0.0;
    for (std::size_t i = n; i-- > 0;) {  // walk outward to the left
      const double x = grid.point(i);
      if (x >= a) continue;
      s += 0.5 * (prev_p + pval[i]) * (prev_x - x);
      action_left[i] = s;
      prev_x = x;
      prev_p = pval[i];
    }
  }
  if (has_right) {
    double s = 0.0;
    double prev_x = b, prev_p = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.point(i);
      if (x <= b) continue;
      s += 0.5 * (prev_p + pval[i]) * (x - prev_x);
      action_right[i] = s;
      prev_x = x;
      prev_p = pval[i];
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.point(i);
    const bool near_a = has_left && std::abs(x - a) < out.guard_width;
    const bool near_b = has_right && std::abs(x - b) < out.guard_width;
    if (near_a || near_b) {
      out.mask[i] = 1;
      continue;
    }
    const bool inside_allowed = (x > a || (!has_left && x >= a)) && (x < b || (!has_right && x <= b));
    if (inside_allowed) {
      const double amp = 1.0 / std::sqrt(pval[i]);  // = exp(-amplitude_log)
      const double phase = action[i] / hbar;
      out.wave.values[i] =
          amp * (matching.c1 * std::polar(1.0, phase) + matching.c2 * std::polar(1.0, -phase));
    } else if (x <= a && has_left) {
      out.wave.values[i] = matching.c_forbidden_left / std::sqrt(pval[i]) *
                           std::exp(-action_left[i] / hbar);
    } else if (x >= b && has_right) {
      out.wave.values[i] = matching.c_forbidden_right / std::sqrt(pval[i]) *
                           std::exp(-action_right[i] / hbar);
    }
  }
  return out;
}

EnergyDecomposition energy_decomposition_check(const WaveFunction& eigenstate, double energy,
                                               const PotentialSpec& potential,
                                               const PhysicsConstants& constants) {
  constants.validate();
  const std::size_t n = eigenstate.grid.n_points;
  EnergyDecomposition out;

  // momentum moments spectrally: <p^k> = sum |psi_hat_j|^2 (hbar k_j)^k / sum |psi_hat_j|^2
  std::vector<std::complex<double>> spec = eigenstate.values;
  fft::forward(spec);
  const auto ks = fft::angular_frequencies(n, eigenstate.grid.dx());
  std::vector<double> w(n), pk(n), p1(n), pabs(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::norm(spec[i]);
    const double p = constants.hbar * ks[i];
    p1[i] = w[i] * p;
    pk[i] = w[i] * p * p;
    pabs[i] = w[i] * std::abs(p);
  }
  const double wsum = pairwise_sum(w);
  out.p_mean = pairwise_sum(p1) / wsum;
  out.p_abs_mean = pairwise_sum(pabs) / wsum;
  const double p2_mean = pairwise_sum(pk) / wsum;
  out.dp2 = p2_mean - out.p_mean * out.p_mean;
  out.kinetic_mean = p2_mean / (2.0 * constants.mass);

  std::vector<double> uw(n), dens(n);
  for (std::size_t i = 0; i < n; ++i) {
    dens[i] = std::norm(eigenstate.values[i]);
    uw[i] = potential(eigenstate.grid.point(i)) * dens[i];
  }
  out.potential_mean = trapezoid(uw, eigenstate.grid.dx()) / trapezoid(dens, eigenstate.grid.dx());

  out.energy_total = out.p_mean * out.p_mean / (2.0 * constants.mass) +
                     out.dp2 / (2.0 * constants.mass) + out.potential_mean;
  out.residual = std::abs(energy - out.energy_total);
  return out;
}

}  // namespace furthlab::wkb
