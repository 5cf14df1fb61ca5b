#include "furthlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "furthlab/numerics.hpp"
#include "furthlab/numerov.hpp"

namespace furthlab::radial {

double RadialProblem::centrifugal_coefficient() const {
  const double l = static_cast<double>(angular_index);
  return geometry == Geometry::spherical ? l * (l + 1.0) : (l + 0.5) * (l + 0.5);
}

void RadialProblem::validate() const {
  if (angular_index < 0) throw std::domain_error("RadialProblem: angular_index must be >= 0");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw std::domain_error("RadialProblem: bad radial range");
  if (n_points < 16) throw std::domain_error("RadialProblem: n_points too small");
  constants.validate();
}

double RadialProblem::log_spacing() const {
  return (std::log(r_max) - std::log(r_min)) / static_cast<double>(n_points - 1);
}

std::vector<double> RadialProblem::radii() const {
  std::vector<double> r(n_points);
  const double t0 = std::log(r_min);
  const double dt = log_spacing();
  for (std::size_t i = 0; i < n_points; ++i) r[i] = std::exp(t0 + static_cast<double>(i) * dt);
  return r;
}

namespace {

// log-grid coefficient: w_tt = f w with f = c^2 + (2m/hbar^2) r^2 (U - E),
// c = l + 1/2 (spherical, w = sqrt(r) R) or c = l (cylindrical, w = Phi).
struct LogGridCoefficient {
  const RadialProblem* problem;
  std::vector<double> r;
  double c_squared;

  void operator()(double E, std::vector<double>& f) const {
    const double two_m_over_h2 =
        2.0 * problem->constants.mass / (problem->constants.hbar * problem->constants.hbar);
    f.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      f[i] = c_squared + two_m_over_h2 * r[i] * r[i] * (problem->potential(r[i]) - E);
  }
};

}  // namespace

EigenSolution numerov_eigensolve(const RadialProblem& problem, int n_radial,
                                 std::optional<std::pair<double, double>> energy_window) {
  problem.validate();
  if (n_radial < 0) throw std::domain_error("numerov_eigensolve: n_radial must be >= 0");

  const auto r = problem.radii();
  const double dt = problem.log_spacing();
  const double l = static_cast<double>(problem.angular_index);
  const bool spherical = problem.geometry == Geometry::spherical;
  const double c_exp = spherical ? l + 0.5 : l;  // leading power of the working function
  const double two_m_over_h2 =
      2.0 * problem.constants.mass / (problem.constants.hbar * problem.constants.hbar);

  numerov::Problem np;
  np.x.resize(problem.n_points);
  const double t0 = std::log(problem.r_min);
  for (std::size_t i = 0; i < problem.n_points; ++i)
    np.x[i] = t0 + static_cast<double>(i) * dt;
  LogGridCoefficient coeff{&problem, r, c_exp * c_exp};
  np.coefficient = [coeff](double E, std::vector<double>& f) { coeff(E, f); };

  np.left_start = [&, c_exp](double E) {
    // series start: leading power times the first correction term
    auto start_value = [&](double rr) {
      double corr;
      if (problem.potential.kind == PotentialSpec::Kind::coulomb) {
        // u = r^{l+1}(1 - Z m r/(hbar^2 (l+1)) + ...)
        corr = 1.0 - problem.potential.charge * problem.constants.mass * rr /
                         (problem.constants.hbar * problem.constants.hbar * (l + 1.0));
      } else {
        const double u0 = problem.potential(problem.r_min);
        const double denom = spherical ? (4.0 * l + 6.0) : (4.0 * l + 4.0);
        corr = 1.0 + two_m_over_h2 * (u0 - E) / denom * rr * rr;
      }
      return std::pow(rr, c_exp) * corr;
    };
    return std::make_pair(start_value(r[0]), start_value(r[1]));
  };

  double e_lo, e_hi;
  if (energy_window) {
    std::tie(e_lo, e_hi) = *energy_window;
  } else {
    double u_min = problem.potential(r[0]);
    for (double rr : r) u_min = std::min(u_min, problem.potential(rr));
    if (problem.potential(problem.r_max) < 0.0) {
      // bound Coulomb-like: bracket inside [1.0001 U_min, 0)
      e_lo = 1.0001 * u_min;
      e_hi = -1e-12;
    } else {
      // confining default window, grown geometrically until it brackets
      e_lo = u_min + 1e-12;
      double span = 50.0;
      e_hi = u_min + span;
      for (int grow = 0; grow < 8 && numerov::sweep_node_count(np, e_hi) <= n_radial; ++grow) {
        span *= 2.0;
        e_hi = u_min + span;
      }
    }
  }

  const auto pair = numerov::solve(np, n_radial, e_lo, e_hi, 1e-13);

  EigenSolution sol;
  sol.geometry = problem.geometry;
  sol.angular_index = problem.angular_index;
  sol.energy = pair.energy;
  sol.r = r;
  sol.working_function = pair.u;
  sol.node_count = pair.nodes;
  sol.residual = pair.ode_residual;

  // physical radial function and unit norm in the geometry's measure:
  // spherical R = y/sqrt(r), int R^2 r^2 dr = int y^2 r^2 dt;
  // cylindrical Phi = w,     int Phi^2 rho drho = int Phi^2 rho^2 dt.
  std::vector<double> w2(problem.n_points);
  for (std::size_t i = 0; i < problem.n_points; ++i)
    w2[i] = pair.u[i] * pair.u[i] * r[i] * r[i];
  const double nrm = std::sqrt(trapezoid(w2, dt));
  sol.radial_function.resize(problem.n_points);
  for (std::size_t i = 0; i < problem.n_points; ++i) {
    const double y = pair.u[i] / nrm;
    sol.working_function[i] = y;
    sol.radial_function[i] = spherical ? y / std::sqrt(r[i]) : y;
  }
  return sol;
}

namespace {

// 4th-order central second derivative on a uniform grid; one-sided ends skipped.
std::vector<double> second_derivative_5pt(const std::vector<double>& w, double h) {
  std::vector<double> out(w.size(), 0.0);
  for (std::size_t i = 2; i + 2 < w.size(); ++i) {
    out[i] = (-w[i - 2] + 16.0 * w[i - 1] - 30.0 * w[i] + 16.0 * w[i + 1] - w[i + 2]) /
             (12.0 * h * h);
  }
  return out;
}

}  // namespace

MappedSolution spherical_to_cylindrical_map(const EigenSolution& spherical,
                                            const RadialProblem& problem) {
  if (spherical.geometry != Geometry::spherical)
    throw std::invalid_argument("spherical_to_cylindrical_map: input must be spherical");
  MappedSolution out;
  out.solution = spherical;
  out.solution.geometry = Geometry::cylindrical;
  const std::size_t n = spherical.r.size();
  out.solution.radial_function.resize(n);
  out.solution.working_function.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = std::sqrt(spherical.r[i]) * spherical.radial_function[i];
    out.solution.radial_function[i] = phi;   // Phi = sqrt(rho) R
    out.solution.working_function[i] = phi;  // Phi is its own log-grid working function
  }

  // rho^2-weighted residual of the cylindrical-form equation with the
  // half-integer (l+1/2)^2 centrifugal term:
  // Phi_tt - [(l+1/2)^2 + (2m/hbar^2) rho^2 (U-E)] Phi, relative max-norm.
  const double dt = problem.log_spacing();
  const double lam = static_cast<double>(spherical.angular_index) + 0.5;
  const double two_m_over_h2 =
      2.0 * problem.constants.mass / (problem.constants.hbar * problem.constants.hbar);
  const auto phi_tt = second_derivative_5pt(out.solution.radial_function, dt);
  double res = 0.0, scale = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double rho = spherical.r[i];
    const double f = lam * lam +
                     two_m_over_h2 * rho * rho * (problem.potential(rho) - spherical.energy);
    const double term = f * out.solution.radial_function[i];
    res = std::max(res, std::abs(phi_tt[i] - term));
    scale = std::max(scale, std::abs(term));
  }
  out.residual = scale > 0.0 ? res / scale : res;
  return out;
}

double separation_energy_shift(double k_z, const PhysicsConstants& constants) {
  return constants.hbar * constants.hbar * k_z * k_z / (2.0 * constants.mass);
}

double separation_check(const MappedSolution& phi, int angular_index, double k_z,
                        const RadialProblem& problem, std::optional<double> lambda_override) {
  const auto& sol = phi.solution;
  if (sol.geometry != Geometry::cylindrical)
    throw std::invalid_argument("separation_check: need a cylindrical-form solution");
  const double lambda = lambda_override.value_or(static_cast<double>(angular_index) + 0.5);
  const std::size_t n = sol.r.size();
  const double dt = problem.log_spacing();
  const double two_m_over_h2 =
      2.0 * problem.constants.mass / (problem.constants.hbar * problem.constants.hbar);
  const double e_total = sol.energy + separation_energy_shift(k_z, problem.constants);

  // Psi = Phi(rho) e^{i lambda phi} e^{i k_z z}; the central second differences
  // in phi and z act on the exact phase factors, giving real coefficients
  // (2 cos(lambda dphi) - 2)/dphi^2 and (2 cos(k_z dz) - 2)/dz^2. The common
  // phase divides out, leaving a real rho^2-weighted residual.
  const double dphi = 1e-3;
  const double dz = 1e-3;
  const double c_phi = (2.0 * std::cos(lambda * dphi) - 2.0) / (dphi * dphi);
  const double c_z = k_z == 0.0 ? 0.0 : (2.0 * std::cos(k_z * dz) - 2.0) / (dz * dz);

  const auto phi_tt = second_derivative_5pt(sol.radial_function, dt);
  double res = 0.0, scale = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double rho = sol.r[i];
    const double rho2 = rho * rho;
    const double value = sol.radial_function[i];
    const double r_i = phi_tt[i] + c_phi * value + c_z * rho2 * value +
                       two_m_over_h2 * rho2 * (e_total - problem.potential(rho)) * value;
    res = std::max(res, std::abs(r_i));
    scale = std::max(scale, std::abs(phi_tt[i]));
  }
  return scale > 0.0 ? res / scale : res;
}

AngularMomentumReport minimal_dispersion_solver(double Lz_mean, Symmetry symmetry,
                                                const PhysicsConstants& constants) {
  constants.validate();
  const double hbar = constants.hbar;
  const double h2 = hbar * hbar;
  AngularMomentumReport rep;
  if (symmetry == Symmetry::cylindrical) {
    const double l_real = Lz_mean / hbar;
    const double l_round = std::round(l_real);
    if (std::abs(l_real - l_round) > 1e-9 || l_round < 0.0)
      throw std::domain_error("minimal_dispersion_solver: Lz_mean must be l*hbar, integer l >= 0");
    const double l = l_round;
    rep.l = static_cast<int>(l);
    rep.m = rep.l;
    rep.Lz_mean = Lz_mean;
    rep.dLx2 = 0.5 * l * h2;  // transverse-pair equality under dLx2 == dLy2
    rep.dLy2 = rep.dLx2;
    rep.dLz2 = 0.25 * h2;     // symmetric equality of the remaining pair
    rep.L2_total = Lz_mean * Lz_mean + rep.dLx2 + rep.dLy2 + rep.dLz2;
    rep.paper_dLx2 = rep.dLx2;
    rep.paper_dLz2 = 0.25 * h2;
    rep.paper_L2 = (l * hbar + 0.5 * hbar) * (l * hbar + 0.5 * hbar);
    rep.l_l_plus_1_hbar2 = h2 * l * (l + 1.0);
    return rep;
  }
  if (Lz_mean != 0.0)
    throw std::domain_error("minimal_dispersion_solver: spherical symmetry requires Lz_mean == 0");
  rep.dLx2 = rep.dLy2 = rep.dLz2 = 0.25 * h2;  // all-equal ansatz
  rep.L2_total = 0.75 * h2;
  rep.paper_dLz2 = 0.25 * h2;
  rep.paper_L2 = 0.75 * h2;
  return rep;
}

namespace {

using CMat = std::vector<std::complex<double>>;  // row-major (dim x dim)

CMat mat_mul(const CMat& a, const CMat& b, std::size_t dim) {
  CMat out(dim * dim, {0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const auto aik = a[i * dim + k];
      if (aik == std::complex<double>{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
    }
  return out;
}

}  // namespace

AngularMomentumReport angular_momentum_oracle(int l, int m, const PhysicsConstants& constants) {
  if (l < 0 || std::abs(m) > l)
    throw std::domain_error("angular_momentum_oracle: need l >= 0 and |m| <= l");
  constants.validate();
  const double hbar = constants.hbar;
  const auto dim = static_cast<std::size_t>(2 * l + 1);
  const auto idx = [l](int mm) { return static_cast<std::size_t>(mm + l); };

  CMat lp(dim * dim, {0.0, 0.0}), lm(dim * dim, {0.0, 0.0}), lz(dim * dim, {0.0, 0.0});
  for (int mm = -l; mm <= l; ++mm) {
    lz[idx(mm) * dim + idx(mm)] = hbar * mm;
    if (mm < l) {
      const double amp = hbar * std::sqrt(static_cast<double>(l * (l + 1) - mm * (mm + 1)));
      lp[idx(mm + 1) * dim + idx(mm)] = amp;  // L+|l,m> = amp |l,m+1>
      lm[idx(mm) * dim + idx(mm + 1)] = amp;  // L-|l,m+1> = amp |l,m>
    }
  }
  CMat lx(dim * dim), ly(dim * dim);
  for (std::size_t i = 0; i < dim * dim; ++i) {
    lx[i] = 0.5 * (lp[i] + lm[i]);
    ly[i] = std::complex<double>(0.0, -0.5) * (lp[i] - lm[i]);
  }
  const CMat lx2 = mat_mul(lx, lx, dim);
  const CMat ly2 = mat_mul(ly, ly, dim);
  const CMat lz2 = mat_mul(lz, lz, dim);

  const std::size_t s = idx(m);
  auto diag = [&](const CMat& a) { return a[s * dim + s].real(); };
  auto mean = [&](const CMat& a) { return a[s * dim + s]; };

  AngularMomentumReport rep;
  rep.l = l;
  rep.m = m;
  rep.Lz_mean = mean(lz).real();
  rep.dLx2 = diag(lx2) - std::norm(mean(lx));
  rep.dLy2 = diag(ly2) - std::norm(mean(ly));
  rep.dLz2 = diag(lz2) - rep.Lz_mean * rep.Lz_mean;
  rep.L2_total = diag(lx2) + diag(ly2) + diag(lz2);
  const double h2 = hbar * hbar;
  rep.paper_dLx2 = 0.5 * l * h2;                                   // claim at m = l
  rep.paper_dLz2 = 0.25 * h2;
  rep.paper_L2 = (l * hbar + 0.5 * hbar) * (l * hbar + 0.5 * hbar);
  rep.l_l_plus_1_hbar2 = h2 * static_cast<double>(l) * (l + 1.0);
  return rep;
}

double radial_momentum_floor(double delta_r_sq, const PhysicsConstants& constants) {
  if (!(delta_r_sq > 0.0))
    throw std::domain_error("radial_momentum_floor: dispersion must be > 0");
  constants.validate();
  return constants.hbar * constants.hbar / (4.0 * delta_r_sq);
}

RadialMoments radial_moments(const EigenSolution& solution, const RadialProblem& problem) {
  const std::size_t n = solution.r.size();
  const double dt = problem.log_spacing();
  const bool spherical = solution.geometry == Geometry::spherical;
  // measure: r^2 dr = r^3 dt (spherical), rho drho = rho^2 dt (cylindrical)
  std::vector<double> w(n), rw(n), r2w(n), uw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rr = solution.r[i];
    const double R = solution.radial_function[i];
    const double meas = spherical ? rr * rr * rr : rr * rr;
    w[i] = R * R * meas;
    rw[i] = rr * w[i];
    r2w[i] = rr * rr * w[i];
    uw[i] = problem.potential(rr) * w[i];
  }
  RadialMoments m;
  const double mass = trapezoid(w, dt);
  m.r_mean = trapezoid(rw, dt) / mass;
  m.r2_mean = trapezoid(r2w, dt) / mass;
  m.delta_r_sq = m.r2_mean - m.r_mean * m.r_mean;
  m.potential_mean = trapezoid(uw, dt) / mass;

  if (spherical) {
    // <P_r^2> = hbar^2 int (du/dr)^2 dr, u = r R = sqrt(r) y; du/dr = u_t / r
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = solution.r[i] * solution.radial_function[i];
    std::vector<double> du(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i)
      du[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * dt);
    std::vector<double> integrand(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i)
      integrand[i] = du[i] * du[i] / solution.r[i];  // (u_t/r)^2 * r dt
    double pr2 = trapezoid(integrand, dt);
    // the log grid never reaches r = 0; close the inner strip with the
    // constant-u' approximation (u' ~ r^l there, exact for l = 0 at leading order)
    const double du_inner = du[2] / solution.r[2];
    pr2 += du_inner * du_inner * solution.r[2];
    m.pr2_mean = problem.constants.hbar * problem.constants.hbar * pr2 / mass;
  }
  return m;
}

Eigenstate1D numerov_eigensolve_1d(const PotentialSpec& potential, int n, double x_max,
                                   std::size_t n_half_points, const PhysicsConstants& constants,
                                   std::optional<std::pair<double, double>> energy_window) {
  if (n < 0) throw std::domain_error("numerov_eigensolve_1d: n must be >= 0");
  if (n_half_points < 16) throw std::domain_error("numerov_eigensolve_1d: grid too small");
  constants.validate();
  const bool even = (n % 2 == 0);
  const double two_m_over_h2 = 2.0 * constants.mass / (constants.hbar * constants.hbar);

  numerov::Problem np;
  np.x.resize(n_half_points);
  const double h = x_max / static_cast<double>(n_half_points - 1);
  for (std::size_t i = 0; i < n_half_points; ++i) np.x[i] = static_cast<double>(i) * h;
  np.coefficient = [&, two_m_over_h2](double E, std::vector<double>& f) {
    f.resize(np.x.size());
    for (std::size_t i = 0; i < np.x.size(); ++i)
      f[i] = two_m_over_h2 * (potential(np.x[i]) - E);
  };
  np.left_start = [&, two_m_over_h2, h](double E) {
    if (!even) return std::make_pair(0.0, h);
    // symmetric start: ghost point u_{-1} = u_1 folded into the first step
    const double c = h * h / 12.0;
    const double f0 = two_m_over_h2 * (potential(0.0) - E);
    const double f1 = two_m_over_h2 * (potential(h) - E);
    const double u1 = (1.0 + 5.0 * c * f0) / (1.0 - c * f1);
    return std::make_pair(1.0, u1);
  };

  double e_lo, e_hi;
  if (energy_window) {
    std::tie(e_lo, e_hi) = *energy_window;
  } else {
    double u_min = potential(0.0);
    for (std::size_t i = 0; i < n_half_points; ++i) u_min = std::min(u_min, potential(np.x[i]));
    e_lo = u_min + 1e-12;
    double span = 50.0;
    e_hi = u_min + span;
    for (int grow = 0; grow < 8 && numerov::sweep_node_count(np, e_hi) <= n / 2; ++grow) {
      span *= 2.0;
      e_hi = u_min + span;
    }
  }
  const auto pair = numerov::solve(np, n / 2, e_lo, e_hi, 1e-13);

  Eigenstate1D out;
  out.energy = pair.energy;
  out.grid = Grid1D{-x_max, x_max, 2 * n_half_points - 1};
  out.values.resize(out.grid.n_points);
  const auto c = static_cast<std::ptrdiff_t>(n_half_points - 1);
  for (std::size_t i = 0; i < out.grid.n_points; ++i) {
    const auto off = static_cast<std::ptrdiff_t>(i) - c;
    const double v = pair.u[static_cast<std::size_t>(std::abs(off))];
    out.values[i] = (off < 0 && !even) ? -v : v;
  }
  std::vector<double> sq(out.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = out.values[i] * out.values[i];
  const double nrm = std::sqrt(trapezoid(sq, out.grid.dx()));
  for (auto& v : out.values) v /= nrm;
  out.nodes = 2 * pair.nodes + (even ? 0 : 1);
  return out;
}

}  // namespace furthlab::radial
