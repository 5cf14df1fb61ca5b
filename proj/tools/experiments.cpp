#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "furthlab/kernels.hpp"
#include "furthlab/numerics.hpp"
#include "furthlab/paths.hpp"
#include "furthlab/radial.hpp"
#include "furthlab/rng.hpp"
#include "furthlab/timeslice.hpp"
#include "furthlab/wkb.hpp"

namespace furthlab::exp {

namespace {

namespace ker = furthlab::kernels;
namespace pth = furthlab::paths;
namespace tsl = furthlab::timeslice;
namespace rad = furthlab::radial;

std::string phase_name(PhaseConvention p) {
  return p == PhaseConvention::plus ? "plus" : "minus";
}

void ensure_dir(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
}

report::ExperimentReport make_report(const RunConfig& cfg, const std::string& name) {
  report::ExperimentReport rep;
  rep.experiment = name;
  rep.config_echo = cfg.echo();
  return rep;
}

double fitted_order(const std::vector<double>& hs, const std::vector<double>& errs) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    lx.push_back(std::log(hs[i]));
    ly.push_back(std::log(errs[i]));
  }
  return linear_fit(lx, ly).slope;
}

}  // namespace

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> m;
  m["experiment"] = experiment;
  m["seed"] = std::to_string(seed);
  m["hbar"] = report::CsvWriter::format_double(constants.hbar);
  m["mass"] = report::CsvWriter::format_double(constants.mass);
  m["phase_convention"] = phase_name(constants.phase);
  m["preset"] = quick ? "quick" : "full";
  m["output_dir"] = output_dir.string();
  m["paths_epsilon"] = report::CsvWriter::format_double(paths_epsilon);
  m["n_paths"] = std::to_string(n_paths());
  m["n_steps"] = std::to_string(n_steps());
  m["radial_potential"] = radial_potential;
  m["radial_l"] = std::to_string(radial_l);
  m["radial_n"] = std::to_string(radial_n);
  return m;
}

// --------------------------------------------------------------------------
// kernels
// --------------------------------------------------------------------------

report::ExperimentReport run_kernels(const RunConfig& cfg) {
  ensure_dir(cfg);
  auto rep = make_report(cfg, "kernels");
  const auto& c = cfg.constants;
  const double D = c.diffusivity();
  const double tau = 1.0;

  const Grid1D heat_grid = Grid1D::centered(15.0, 601);
  const double res_heat =
      ker::chapman_kolmogorov_residual(ker::KernelKind::heat, tau, 0.5, heat_grid, 0.0, c);
  rep.add_result("ck_heat_residual", res_heat);
  rep.add_gate("ck_heat_residual", res_heat, 1e-8);

  // quantum damping sweep; residual must fall with delta and clear 1e-3
  const Grid1D q_grid = Grid1D::centered(15.0, 601);
  std::vector<double> deltas{1e-2, 1e-3};
  std::vector<double> q_res;
  for (double d : deltas)
    q_res.push_back(
        ker::chapman_kolmogorov_residual(ker::KernelKind::quantum, tau, 0.5, q_grid, d, c));
  rep.add_result("ck_quantum_residual_1e-2", q_res[0]);
  rep.add_result("ck_quantum_residual_1e-3", q_res[1]);
  rep.add_gate("ck_quantum_residual_at_1e-3", q_res[1], 1e-3);
  rep.add_gate("ck_quantum_monotone_in_damping", q_res[1] / q_res[0], 1.0);
  {
    report::CsvWriter csv({"damping", "residual"});
    for (std::size_t i = 0; i < deltas.size(); ++i) csv.add_row({deltas[i], q_res[i]});
    csv.write(cfg.output_dir / "ck_damping_sweep.csv");
  }

  // Fresnel normalization with linear Richardson extrapolation in delta
  {
    const std::vector<double> ds{1e-2, 1e-3, 1e-4};
    std::vector<std::complex<double>> vals;
    for (double d : ds)
      vals.push_back(ker::damped_kernel_integral(ker::KernelKind::quantum, tau, d, q_grid, c));
    const double d1 = ds[ds.size() - 2], d2 = ds.back();
    const std::complex<double> extrap = (d1 * vals.back() - d2 * vals[vals.size() - 2]) / (d1 - d2);
    const double dev = std::abs(extrap - 1.0);
    rep.add_result("fresnel_normalization_extrapolated_defect", dev);
    rep.add_gate("fresnel_normalization", dev, 1e-3);
  }

  // multi-slice composition vs direct kernel
  {
    const Grid1D g = Grid1D::centered(6.0, 601);
    const auto direct = ker::direct_kernel_table(ker::KernelKind::heat, tau, g, 0.0, c);
    const auto composed = ker::multi_slice_kernel(ker::KernelKind::heat, tau, 4, g, 0.0, c);
    double dev = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i)
      dev = std::max(dev, std::abs(composed.values[i] - direct.values[i]));
    rep.add_result("multislice_heat_n4_deviation", dev);
    rep.add_gate("multislice_heat_n4", dev, 1e-7);
  }
  {
    const Grid1D g = Grid1D::centered(4.0, 401);
    const double delta = 1e-3;
    const auto direct = ker::direct_kernel_table(ker::KernelKind::quantum, tau, g, 0.0, c);
    const auto composed = ker::multi_slice_kernel(ker::KernelKind::quantum, tau, 4, g, delta, c);
    double dev = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i)
      dev = std::max(dev, std::abs(composed.values[i] - direct.values[i]));
    rep.add_result("multislice_quantum_n4_deviation", dev);
    rep.add_gate("multislice_quantum_n4", dev, 5e-3);

    report::CsvWriter csv({"displacement", "re", "im", "direct_re", "direct_im"});
    for (std::size_t i = 0; i < g.n_points; ++i)
      csv.add_row({g.point(i), composed.values[i].real(), composed.values[i].imag(),
                   direct.values[i].real(), direct.values[i].imag()});
    csv.write(cfg.output_dir / "multi_slice_quantum.csv");
  }

  // density propagation: Gaussian spreading and the semigroup check
  {
    const Grid1D g = Grid1D::centered(18.0, cfg.quick ? 901 : 1801);
    const auto w0 = gaussian_density(g, 0.0, 1.0);
    const auto one = ker::propagate_density(w0, tau, D);
    const double var_err = std::abs(one.density.variance() - (1.0 + 2.0 * D * tau));
    rep.add_result("density_gaussian_variance_error", var_err);
    rep.add_gate("density_gaussian_variance", var_err, 1e-8);
    rep.add_result("density_mass_defect", one.mass_defect);
    rep.add_gate("density_mass_defect", one.mass_defect, 1e-8);

    const auto half = ker::propagate_density(w0, 0.5 * tau, D);
    const auto two = ker::propagate_density(half.density, 0.5 * tau, D);
    double dev = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i)
      dev = std::max(dev, std::abs(two.density.values[i] - one.density.values[i]));
    rep.add_result("density_semigroup_deviation", dev);
    rep.add_gate("density_semigroup", dev, 1e-8);
  }

  // free-packet spreading through the exact kernel symbol
  {
    const Grid1D g = Grid1D::centered(20.0, cfg.quick ? 1001 : 2001);
    const auto psi0 = gaussian_packet(g, 0.0, 1.0);
    const auto out = ker::propagate_wavefunction(psi0, 1.0, c, 0.0);
    const double hbar_t_2m = c.hbar * 1.0 / (2.0 * c.mass);
    const double expected = 1.0 + hbar_t_2m * hbar_t_2m;
    const double rel = std::abs(out.wave.position_variance() - expected) / expected;
    rep.add_result("wavefunction_width_rel_error", rel);
    rep.add_gate("wavefunction_width", rel, 1e-6);
    rep.add_result("wavefunction_norm_defect", out.norm_defect);
    rep.add_gate("wavefunction_norm", out.norm_defect, 1e-6);
  }

  // Ornstein-Uhlenbeck relaxation of the explicit Fokker-Planck stepper
  {
    const double spring = 0.5;
    const double sigma_st = std::sqrt(D / spring);  // stationary width
    const Grid1D g = Grid1D::centered(8.0 * sigma_st, cfg.quick ? 201 : 401);
    DensityField w = gaussian_density(g, 1.5 * sigma_st, 0.5 * sigma_st);
    std::vector<double> drift(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) drift[i] = -spring * g.point(i);
    const double dt = 0.8 * g.dx() * g.dx() / (4.0 * D);
    const auto steps = static_cast<std::size_t>(std::ceil(24.0 / (spring * dt) * 0.5));
    for (std::size_t s = 0; s < steps; ++s) w = ker::fokker_planck_step(w, drift, D, dt);
    const double mass_err = std::abs(w.total_mass() - 1.0);
    const double var_rel = std::abs(w.variance() - D / spring) / (D / spring);
    rep.add_result("fp_ou_mass_error", mass_err);
    rep.add_result("fp_ou_variance_rel_error", var_rel);
    rep.add_gate("fp_ou_mass_conservation", mass_err, 1e-9);
    rep.add_gate("fp_ou_stationary_variance", var_rel, 1e-2);
  }

  // kernel profile CSVs: displacement, re, im (im = 0 for heat)
  {
    const Grid1D g = Grid1D::centered(6.0, 241);
    const auto ht = ker::direct_kernel_table(ker::KernelKind::heat, tau, g, 0.0, c);
    const auto qt = ker::direct_kernel_table(ker::KernelKind::quantum, tau, g, 0.0, c);
    report::CsvWriter hcsv({"displacement", "re", "im"});
    report::CsvWriter qcsv({"displacement", "re", "im"});
    for (std::size_t i = 0; i < g.n_points; ++i) {
      hcsv.add_row({g.point(i), ht.values[i].real(), 0.0});
      qcsv.add_row({g.point(i), qt.values[i].real(), qt.values[i].imag()});
    }
    hcsv.write(cfg.output_dir / "kernel_profile_heat.csv");
    qcsv.write(cfg.output_dir / "kernel_profile_quantum.csv");
  }
  return rep;
}

// --------------------------------------------------------------------------
// paths
// --------------------------------------------------------------------------

report::ExperimentReport run_paths(const RunConfig& cfg) {
  ensure_dir(cfg);
  auto rep = make_report(cfg, "paths");
  const auto& c = cfg.constants;
  const double D = c.diffusivity();
  const double eps = cfg.paths_epsilon;

  const auto ens =
      pth::sample_wiener_ensemble(cfg.n_paths(), cfg.n_steps(), eps, D, 0.0, cfg.seed, c);

  {
    const auto est = pth::estimate_diffusion(ens);
    rep.add_estimator(est);
    rep.add_gate("diffusion_recovery_sigmas", est.discrepancy_sigma.value_or(1e9), 3.0);
  }
  {
    const auto est = pth::osmotic_speed(ens);
    rep.add_estimator(est);
    rep.add_gate("osmotic_speed_sigmas", est.discrepancy_sigma.value_or(1e9), 3.0);
    const auto claims = pth::osmotic_speed_paper_values(ens);
    report::ScalarResult aux;
    aux.name = "osmotic_speed_alternate_claim";
    aux.value = claims.eq_t;
    aux.note = "alternate stated scale hbar/(2 m eps); differs from 2D/eps by a factor 2 at D = hbar/2m";
    rep.add_result(aux);
  }
  {
    const auto gap = pth::nondifferentiability_gap(ens);
    rep.add_estimator(gap);
    const std::vector<double> sweep{0.04, 0.02, 0.01, 0.005};
    const auto scaling = pth::nondifferentiability_scaling(sweep, cfg.n_paths(), cfg.n_steps(), D,
                                                           0.0, cfg.seed + 17);
    rep.add_result("gap_scaling_slope", scaling.log_log_slope);
    rep.add_gate("gap_scaling_slope_error", std::abs(scaling.log_log_slope + 0.5), 0.05);
    report::CsvWriter csv({"eps", "rms_gap"});
    for (std::size_t i = 0; i < scaling.epsilons.size(); ++i)
      csv.add_row({scaling.epsilons[i], scaling.rms_gaps[i]});
    csv.write(cfg.output_dir / "gap_scaling.csv");
  }

  // uncertainty chain: algebraic, eps-independent across three decades
  {
    const std::vector<double> chain_eps{0.1, 0.01, 0.001};
    const double claim = 0.25 * c.hbar * c.hbar;
    double max_dev = 0.0;
    for (double e : chain_eps) {
      const auto u = pth::uncertainty_products(e, c);
      max_dev = std::max(max_dev, std::abs(u.position_momentum_product - claim));
    }
    const auto u = pth::uncertainty_products(0.1, c);
    rep.add_result("dp2_at_eps_0.1", u.mean_dp_squared);
    rep.add_result("dx2_mean_at_eps_0.1", u.mean_dx_squared);
    rep.add_result("position_momentum_product", u.position_momentum_product);
    rep.add_gate("position_momentum_product_equals_quarter_hbar2", max_dev, 1e-12);
    rep.add_result("energy_time_product", u.energy_time_product);
    report::ScalarResult cl;
    cl.name = "energy_time_paper_claim";
    cl.value = u.energy_time_claim;
    cl.note = "stated claim (hbar/2)^2; the chain itself gives (hbar/4)^2 -- factor-4 discrepancy flagged";
    rep.add_result(cl);
    rep.add_result("energy_time_discrepancy_factor", u.energy_time_discrepancy_factor);
    rep.add_gate("energy_time_discrepancy_reported",
                 std::abs(u.energy_time_discrepancy_factor - 4.0), 1e-12);

    report::CsvWriter csv({"eps", "dp2", "dx2_mean", "px_product", "energy_time_product"});
    for (double e : chain_eps) {
      const auto uc = pth::uncertainty_products(e, c);
      csv.add_row({e, uc.mean_dp_squared, uc.mean_dx_squared, uc.position_momentum_product,
                   uc.energy_time_product});
    }
    csv.write(cfg.output_dir / "uncertainty_chain.csv");
  }

  // kinetic estimators on drifting ensembles over an eps sweep
  {
    const double v0 = 1.0;
    const std::vector<double> sweep{0.04, 0.02, 0.01, 0.005};
    std::vector<double> inv_eps, naive, naive_err, symm, symm_err;
    double worst_symra = 0.0;
    report::CsvWriter csv({"eps", "naive_ke", "naive_stderr", "symm_ke", "symm_stderr"});
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const auto e = pth::sample_wiener_ensemble(
          cfg.n_paths(), cfg.n_steps(), sweep[i], D, v0,
          CounterRng::mix64(cfg.seed + 1000 + i), c);
      const auto est = pth::kinetic_energy_estimators(e);
      inv_eps.push_back(1.0 / sweep[i]);
      naive.push_back(est.naive.estimate);
      naive_err.push_back(est.naive.stderr_of_mean);
      symm.push_back(est.symmetric.estimate);
      symm_err.push_back(est.symmetric.stderr_of_mean);
      const double target = 0.5 * c.mass * v0 * v0;
      worst_symra = std::max(worst_symra,
                             std::abs(est.symmetric.estimate - target) / est.symmetric.stderr_of_mean);
      csv.add_row({sweep[i], est.naive.estimate, est.naive.stderr_of_mean,
                   est.symmetric.estimate, est.symmetric.stderr_of_mean});
    }
    csv.write(cfg.output_dir / "eps_sweep.csv");
    const auto fit = linear_fit(inv_eps, naive);
    rep.add_result("kinetic_naive_divergence_slope", fit.slope);
    rep.add_gate("kinetic_naive_slope_matches_mD",
                 std::abs(fit.slope - c.mass * D) / (c.mass * D), 0.10);
    const auto symm_fit = linear_fit(inv_eps, symm);
    rep.add_result("kinetic_symmetric_slope_vs_inv_eps", symm_fit.slope);
    rep.add_gate("kinetic_symmetric_has_no_divergent_part", std::abs(symm_fit.slope),
                 0.05 * c.mass * D);
    rep.add_result("kinetic_symmetric_worst_sigmas", worst_symra);
    rep.add_gate("kinetic_symmetric_converges", worst_symra, 3.0);

    // per-sample identity (v+)^2 + (v-)^2 - 2 v+ v- == (v+ - v-)^2
    double id_dev = 0.0;
    const auto& e0 = ens;
    for (const auto& p : e0.paths) {
      for (std::size_t n = 1; n + 1 <= p.n_steps(); ++n) {
        const auto fb = pth::forward_backward_velocity(p, n);
        const double lhs = fb.v_plus * fb.v_plus + fb.v_minus * fb.v_minus -
                           2.0 * fb.v_plus * fb.v_minus;
        const double rhs = (fb.v_plus - fb.v_minus) * (fb.v_plus - fb.v_minus);
        const double scale = std::max(1.0, std::abs(rhs));
        id_dev = std::max(id_dev, std::abs(lhs - rhs) / scale);
      }
    }
    rep.add_result("kinetic_identity_max_deviation", id_dev);
    rep.add_gate("kinetic_identity", id_dev, 1e-12);
  }

  // sample paths CSV: path_id, step, t, x (first three paths)
  {
    report::CsvWriter csv({"path_id", "step", "t", "x"});
    const std::size_t n_dump = std::min<std::size_t>(3, ens.paths.size());
    for (std::size_t pid = 0; pid < n_dump; ++pid) {
      const auto& p = ens.paths[pid];
      for (std::size_t s = 0; s < p.positions.size(); ++s)
        csv.add_row({static_cast<double>(pid), static_cast<double>(s),
                     static_cast<double>(s) * p.epsilon, p.positions[s]});
    }
    csv.write(cfg.output_dir / "paths_sample.csv");
  }
  return rep;
}

// --------------------------------------------------------------------------
// evolve
// --------------------------------------------------------------------------

namespace {

Grid1D chirp_resolved_grid(double half_width, double epsilon, const PhysicsConstants& c) {
  Grid1D g = Grid1D::centered(half_width, 2);
  g.n_points = tsl::required_points(g, epsilon, c) + 1;
  return g;
}

}  // namespace

report::ExperimentReport run_evolve(const RunConfig& cfg) {
  ensure_dir(cfg);
  auto rep = make_report(cfg, "evolve");
  const auto& c = cfg.constants;

  // free Gaussian spreading, T = 1
  {
    tsl::EvolutionConfig ec;
    ec.constants = c;
    ec.epsilon = 0.05;
    ec.n_steps = 20;
    const Grid1D g = chirp_resolved_grid(12.0, ec.epsilon, c);
    const auto psi0 = gaussian_packet(g, 0.0, 1.0);
    const auto result = tsl::evolve(psi0, ec, PotentialSpec::free_particle());
    const double widen = c.hbar * ec.total_time() / (2.0 * c.mass);
    const double expected = 1.0 + widen * widen;
    const double rel = std::abs(result.snapshots.back().position_variance() - expected) / expected;
    rep.add_result("free_width_rel_error", rel);
    rep.add_gate("free_width", rel, 1e-3);
  }

  // harmonic ground state must stay put over 100 steps of eps = 0.01
  {
    tsl::EvolutionConfig ec;
    ec.constants = c;
    const double omega = std::sqrt(1.0 / c.mass);  // k = 1
    ec.epsilon = 0.01 / omega;  // 0.01 at natural units; same phase per step otherwise
    ec.n_steps = 100;
    const double gw = c.mass * omega / c.hbar;     // exp(-gw x^2 / 2)
    const Grid1D g =
        chirp_resolved_grid((cfg.quick ? 4.5 : 6.0) / std::sqrt(gw), ec.epsilon, c);
    WaveFunction psi0{g, std::vector<std::complex<double>>(g.n_points)};
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double x = g.point(i);
      psi0.values[i] = std::exp(-0.5 * gw * x * x);
    }
    psi0.normalize();
    const auto result = tsl::evolve(psi0, ec, PotentialSpec::harmonic(1.0));
    double dev = 0.0;
    const auto& last = result.snapshots.back();
    for (std::size_t i = 0; i < g.n_points; ++i)
      dev = std::max(dev, std::abs(std::abs(last.values[i]) - std::abs(psi0.values[i])));
    rep.add_result("harmonic_stationary_deviation", dev);
    rep.add_gate("harmonic_stationary", dev, 1e-3);
    double max_drift = 0.0;
    for (double d : result.norm_drift) max_drift = std::max(max_drift, d);
    rep.add_result("harmonic_max_norm_drift_per_step", max_drift);

    report::CsvWriter csv({"x", "re", "im", "abs2"});
    for (std::size_t i = 0; i < g.n_points; i += 8)
      csv.add_row({g.point(i), last.values[i].real(), last.values[i].imag(),
                   std::norm(last.values[i])});
    csv.write(cfg.output_dir / "evolve_harmonic_final.csv");
  }

  // expanded vs full potential factor: per-step difference of order >= 1.9.
  // Grid +-4 oscillator lengths keeps max|U| eps/hbar below the expanded-mode
  // precondition once the sweep base scales as m*omega.
  {
    const double omega = std::sqrt(1.0 / c.mass);
    const double gw = c.mass * omega / c.hbar;
    const double eps0 = 0.01 * c.mass * omega;
    const std::vector<double> sweep =
        cfg.quick ? std::vector<double>{eps0, 0.5 * eps0, 0.25 * eps0}
                  : std::vector<double>{eps0, 0.5 * eps0, 0.25 * eps0, 0.125 * eps0};
    std::vector<double> diffs;
    for (double e : sweep) {
      tsl::EvolutionConfig ec;
      ec.constants = c;
      ec.epsilon = e;
      ec.n_steps = 1;
      const Grid1D g = chirp_resolved_grid(4.0 / std::sqrt(gw), e, c);
      WaveFunction psi0{g, std::vector<std::complex<double>>(g.n_points)};
      for (std::size_t i = 0; i < g.n_points; ++i)
        psi0.values[i] = std::exp(-0.5 * gw * g.point(i) * g.point(i));
      psi0.normalize();
      ec.mode = tsl::PotentialMode::full_exponential;
      const auto full = tsl::short_time_step(psi0, ec, PotentialSpec::harmonic(1.0));
      ec.mode = tsl::PotentialMode::expanded_first_order;
      const auto expanded = tsl::short_time_step(psi0, ec, PotentialSpec::harmonic(1.0));
      std::vector<double> d2(g.n_points);
      for (std::size_t i = 0; i < g.n_points; ++i)
        d2[i] = std::norm(full.values[i] - expanded.values[i]);
      diffs.push_back(std::sqrt(trapezoid(d2, g.dx())));
    }
    const double order = fitted_order(sweep, diffs);
    rep.add_result("mode_difference_order", order);
    rep.add_gate("mode_difference_order", order, 1.9, ">=");
  }

  // Schrodinger residual of the stepped free packet, sampled at dx ~ 0.05
  {
    tsl::EvolutionConfig ec;
    ec.constants = c;
    ec.epsilon = 0.01;
    ec.n_steps = 4;
    const Grid1D g = chirp_resolved_grid(cfg.quick ? 8.0 : 10.0, ec.epsilon, c);
    const auto psi0 = gaussian_packet(g, 0.0, 1.0);
    const auto result = tsl::evolve(psi0, ec, PotentialSpec::free_particle());
    const auto stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::round(0.05 / g.dx())));
    std::vector<WaveFunction> coarse;
    const std::size_t nc = (g.n_points - 1) / stride + 1;
    const Grid1D cg{g.x_min, g.point((nc - 1) * stride), nc};
    for (const auto& snap : result.snapshots) {
      WaveFunction w{cg, std::vector<std::complex<double>>(nc)};
      for (std::size_t i = 0; i < nc; ++i) w.values[i] = snap.values[i * stride];
      coarse.push_back(std::move(w));
    }
    const double res = tsl::schrodinger_residual(coarse, ec.epsilon,
                                                 PotentialSpec::free_particle(), c);
    rep.add_result("schrodinger_residual", res);
    rep.add_gate("schrodinger_residual", res, 1e-3);
  }
  return rep;
}

// --------------------------------------------------------------------------
// wkb
// --------------------------------------------------------------------------

namespace {

double wkb_l2_error_vs_numerov(int n, const RunConfig& cfg, report::ExperimentReport* rep) {
  const auto& c = cfg.constants;
  const auto pot = PotentialSpec::harmonic(1.0);
  // box: well beyond the classical turning radius of level n, in scaled units
  const double omega = std::sqrt(1.0 / c.mass);
  const double turn = std::sqrt(2.0 * c.hbar * omega * (n + 0.5));
  const double x_max = 1.5 * turn + 5.0 * std::sqrt(c.hbar / (c.mass * omega));
  const auto exact = rad::numerov_eigensolve_1d(pot, n, x_max, cfg.quick ? 12001 : 24001, c);
  const auto matching = wkb::WkbMatching::cosine_form();
  const auto w = wkb::wkb_wavefunction(exact.energy, pot, exact.grid, matching, c, 0.10);

  // compare on the allowed region outside the guard bands, both renormalized
  // on that set
  const double a = w.turning_points.points.front();
  const double b = w.turning_points.points.back();
  std::vector<double> num, approx;
  for (std::size_t i = 0; i < exact.grid.n_points; ++i) {
    const double x = exact.grid.point(i);
    if (x <= a || x >= b || w.mask[i]) continue;
    num.push_back(exact.values[i]);
    approx.push_back(w.wave.values[i].real());
  }
  double nn = 0.0, na = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    nn += num[i] * num[i];
    na += approx[i] * approx[i];
  }
  const double sn = std::sqrt(nn), sa = std::sqrt(na);
  for (std::size_t i = 0; i < num.size(); ++i) dot += (num[i] / sn) * (approx[i] / sa);
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  double err2 = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double d = num[i] / sn - sign * approx[i] / sa;
    err2 += d * d;
  }
  const double rel = std::sqrt(err2);  // relative: comparison vectors are unit

  if (rep && n == 10) {
    report::CsvWriter csv({"x", "wkb_re", "wkb_im", "exact", "mask"});
    for (std::size_t i = 0; i < exact.grid.n_points; i += 16) {
      csv.add_row({exact.grid.point(i), w.wave.values[i].real(), w.wave.values[i].imag(),
                   exact.values[i], static_cast<double>(w.mask[i])});
    }
    csv.write(cfg.output_dir / "wkb_comparison.csv");
  }
  return rel;
}

}  // namespace

report::ExperimentReport run_wkb(const RunConfig& cfg) {
  ensure_dir(cfg);
  auto rep = make_report(cfg, "wkb");
  const auto& c = cfg.constants;
  const auto pot = PotentialSpec::harmonic(1.0);

  const double err10 = wkb_l2_error_vs_numerov(10, cfg, &rep);
  rep.add_result("wkb_l2_error_n10", err10);
  rep.add_gate("wkb_vs_numerov_n10", err10, 0.02);

  const double err5 = wkb_l2_error_vs_numerov(5, cfg, nullptr);
  const double err20 = wkb_l2_error_vs_numerov(20, cfg, nullptr);
  rep.add_result("wkb_l2_error_n5", err5);
  rep.add_result("wkb_l2_error_n20", err20);
  rep.add_gate("wkb_error_decreases_with_n", err20 / err5, 1.0);

  // amplitude identity exp(-1/2 ln p) == p^{-1/2}
  {
    double dev = 0.0;
    const auto act = wkb::action_integrals(10.5, pot, -4.0, 4.0, 257, c);
    for (std::size_t i = 0; i < act.sample_x.size(); ++i) {
      const double p = wkb::local_momentum(10.5, pot, act.sample_x[i], c).value;
      dev = std::max(dev, std::abs(std::exp(-act.amplitude_log[i]) - 1.0 / std::sqrt(p)));
    }
    rep.add_result("amplitude_identity_deviation", dev);
    rep.add_gate("amplitude_identity", dev, 1e-12);
  }

  // kinetic-energy decomposition on Numerov eigenstates
  {
    double worst = 0.0;
    const double omega = std::sqrt(1.0 / c.mass);
    const double box = 12.0 * std::sqrt(c.hbar / (c.mass * omega));
    for (int n : {0, 3}) {
      const auto st = rad::numerov_eigensolve_1d(pot, n, box, cfg.quick ? 12001 : 24001, c);
      WaveFunction psi{st.grid, std::vector<std::complex<double>>(st.grid.n_points)};
      for (std::size_t i = 0; i < st.values.size(); ++i) psi.values[i] = st.values[i];
      const auto dec = wkb::energy_decomposition_check(psi, st.energy, pot, c);
      worst = std::max(worst, dec.residual);
      if (n == 0) {
        rep.add_result("ground_state_dp2_over_2m", dec.dp2 / (2.0 * c.mass));
        rep.add_result("ground_state_potential_mean", dec.potential_mean);
        rep.add_result("ground_state_p_abs_mean", dec.p_abs_mean);
      }
    }
    rep.add_result("energy_decomposition_worst_residual", worst);
    rep.add_gate("energy_decomposition", worst, 1e-8);
  }

  // hydrogen 1s decomposition via the radial module (virial oracle)
  {
    const double bohr = c.hbar * c.hbar / c.mass;
    rad::RadialProblem prob;
    prob.geometry = rad::Geometry::spherical;
    prob.angular_index = 0;
    prob.potential = PotentialSpec::coulomb(1.0);
    prob.r_min = 1e-5 * bohr;
    prob.r_max = 45.0 * bohr;
    prob.n_points = cfg.quick ? 4000 : 6000;
    prob.constants = c;
    const auto sol = rad::numerov_eigensolve(prob, 0);
    const auto mom = rad::radial_moments(sol, prob);
    const double kinetic = mom.pr2_mean / (2.0 * c.mass);
    rep.add_result("hydrogen_1s_kinetic", kinetic);
    rep.add_result("hydrogen_1s_potential_mean", mom.potential_mean);
    const double res = std::abs(sol.energy - (kinetic + mom.potential_mean));
    rep.add_result("hydrogen_1s_decomposition_residual", res);
    rep.add_gate("hydrogen_1s_decomposition", res, 1e-6);
  }
  return rep;
}

// --------------------------------------------------------------------------
// radial
// --------------------------------------------------------------------------

report::ExperimentReport run_radial(const RunConfig& cfg) {
  ensure_dir(cfg);
  auto rep = make_report(cfg, "radial");
  const auto& c = cfg.constants;
  report::CsvWriter spectrum({"system", "l", "n_radial", "energy", "exact", "error"});

  // length scales: Bohr-like radius for the Coulomb problem, oscillator
  // length for the harmonic ones; keeps the gates valid for any hbar/mass
  const double bohr = c.hbar * c.hbar / c.mass;
  const double rydberg_pair = c.mass / (2.0 * c.hbar * c.hbar);  // |E_1| for Z = 1
  const double omega = std::sqrt(1.0 / c.mass);                  // k = 1
  const double osc_len = std::sqrt(c.hbar / (c.mass * omega));

  rad::RadialProblem hyd;
  hyd.geometry = rad::Geometry::spherical;
  hyd.angular_index = 0;
  hyd.potential = PotentialSpec::coulomb(1.0);
  hyd.r_min = 1e-5 * bohr;
  hyd.r_max = 45.0 * bohr;
  hyd.n_points = cfg.quick ? 4000 : 6000;
  hyd.constants = c;

  rad::EigenSolution hyd_1s;
  {
    double worst = 0.0;
    for (int n : {0, 1}) {
      const auto sol = rad::numerov_eigensolve(hyd, n);
      const double exact = -rydberg_pair / ((n + 1.0) * (n + 1.0));
      worst = std::max(worst, std::abs(sol.energy - exact));
      spectrum.add_row({std::string("hydrogen"), report::CsvWriter::format_double(0),
                        report::CsvWriter::format_double(n),
                        report::CsvWriter::format_double(sol.energy),
                        report::CsvWriter::format_double(exact),
                        report::CsvWriter::format_double(sol.energy - exact)});
      if (n == 0) hyd_1s = sol;
    }
    rep.add_result("hydrogen_worst_energy_error", worst);
    rep.add_gate("hydrogen_energies", worst, 1e-8);
  }

  rad::RadialProblem h3;
  h3.geometry = rad::Geometry::spherical;
  h3.angular_index = 0;
  h3.potential = PotentialSpec::harmonic(1.0);
  h3.r_min = 1e-6 * osc_len;
  h3.r_max = 12.0 * osc_len;
  h3.n_points = cfg.quick ? 4000 : 6000;
  h3.constants = c;
  const auto sol3 = rad::numerov_eigensolve(h3, 0);
  const double e3_exact = 1.5 * c.hbar * omega;
  rep.add_result("harmonic_3d_ground_energy", sol3.energy);
  rep.add_gate("harmonic_3d_ground", std::abs(sol3.energy - e3_exact), 1e-8);
  spectrum.add_row({std::string("harmonic3d"), "0", "0",
                    report::CsvWriter::format_double(sol3.energy),
                    report::CsvWriter::format_double(e3_exact),
                    report::CsvWriter::format_double(sol3.energy - e3_exact)});

  rad::RadialProblem h2 = h3;
  h2.geometry = rad::Geometry::cylindrical;
  const auto sol2 = rad::numerov_eigensolve(h2, 0);
  const double e2_exact = 1.0 * c.hbar * omega;
  rep.add_result("harmonic_2d_ground_energy", sol2.energy);
  rep.add_gate("harmonic_2d_ground", std::abs(sol2.energy - e2_exact), 1e-8);
  spectrum.add_row({std::string("harmonic2d"), "0", "0",
                    report::CsvWriter::format_double(sol2.energy),
                    report::CsvWriter::format_double(e2_exact),
                    report::CsvWriter::format_double(sol2.energy - e2_exact)});
  // the CLI-requested solve (defaults: coulomb, l = 0, n_radial = 0)
  {
    rad::RadialProblem req = cfg.radial_potential == "harmonic" ? h3 : hyd;
    req.angular_index = cfg.radial_l;
    const auto sol = rad::numerov_eigensolve(req, cfg.radial_n);
    rep.add_result("requested_energy", sol.energy);
    rep.add_result("requested_node_count", static_cast<double>(sol.node_count));
    rep.add_result("requested_ode_residual", sol.residual);
    double exact;
    if (cfg.radial_potential == "harmonic") {
      exact = (2.0 * cfg.radial_n + cfg.radial_l + 1.5) * c.hbar * omega;
    } else {
      const double nn = cfg.radial_n + cfg.radial_l + 1.0;
      exact = -rydberg_pair / (nn * nn);
    }
    rep.add_result("requested_exact_energy", exact);
    rep.add_gate("requested_energy_error", std::abs(sol.energy - exact), 1e-8);
    spectrum.add_row({std::string("requested_") + cfg.radial_potential,
                      report::CsvWriter::format_double(cfg.radial_l),
                      report::CsvWriter::format_double(cfg.radial_n),
                      report::CsvWriter::format_double(sol.energy),
                      report::CsvWriter::format_double(exact),
                      report::CsvWriter::format_double(sol.energy - exact)});
  }
  spectrum.write(cfg.output_dir / "spectrum.csv");

  // node-count monotonicity at fixed l
  {
    rad::RadialProblem p = h3;
    p.angular_index = 1;
    double prev = -1e300, min_gap = 1e300;
    for (int n = 0; n <= 3; ++n) {
      const auto s = rad::numerov_eigensolve(p, n);
      if (n > 0) min_gap = std::min(min_gap, s.energy - prev);
      prev = s.energy;
    }
    rep.add_result("harmonic_3d_l1_min_level_gap", min_gap);
    rep.add_gate("node_count_monotonicity", min_gap, 0.0, ">");
  }

  // spherical -> cylindrical-form substitution on hydrogen 1s
  const auto mapped = rad::spherical_to_cylindrical_map(hyd_1s, hyd);
  rep.add_result("map_residual_hydrogen_1s", mapped.residual);
  rep.add_gate("spherical_to_cylindrical_map", mapped.residual, 1e-6);

  // separation check on the mapped 3D-harmonic ground state
  {
    const auto mapped_h = rad::spherical_to_cylindrical_map(sol3, h3);
    const double res_half = rad::separation_check(mapped_h, 0, 0.0, h3);
    const double res_int = rad::separation_check(mapped_h, 0, 0.0, h3, 0.0);
    rep.add_result("separation_residual_lambda_l_plus_half", res_half);
    rep.add_result("separation_residual_lambda_l", res_int);
    rep.add_gate("separation_check", res_half, 1e-6);
    rep.add_gate("separation_integer_lambda_strictly_worse", res_int / res_half, 10.0, ">");
    const double shift = rad::separation_energy_shift(1.0, c);
    rep.add_result("separation_kz1_energy_shift", shift);
    rep.add_gate("separation_kz_shift_exact",
                 std::abs(shift - 0.5 * c.hbar * c.hbar / c.mass), 1e-15);
  }

  // radial momentum dispersion floor on hydrogen 1s
  {
    const auto mom = rad::radial_moments(hyd_1s, hyd);
    const double floor = rad::radial_momentum_floor(mom.delta_r_sq, c);
    rep.add_result("hydrogen_1s_delta_r_sq", mom.delta_r_sq);
    rep.add_result("hydrogen_1s_pr2", mom.pr2_mean);
    rep.add_result("hydrogen_1s_momentum_floor", floor);
    report::ScalarResult printed;
    printed.name = "hydrogen_1s_momentum_floor_as_printed";
    printed.value = 0.25 * c.hbar * c.hbar * mom.delta_r_sq;
    printed.note = "the as-printed bound multiplies by <dr^2>; dimensional consistency requires "
                   "division (the asserted floor)";
    rep.add_result(printed);
    rep.add_gate("delta_r_sq_matches_0.75_bohr_sq",
                 std::abs(mom.delta_r_sq - 0.75 * bohr * bohr), 1e-6 * bohr * bohr);
    rep.add_gate("radial_momentum_above_floor", mom.pr2_mean, floor, ">");
  }

  // hydrogen 1s eigenfunction CSV (r, value)
  {
    report::CsvWriter csv({"r", "value"});
    for (std::size_t i = 0; i < hyd_1s.r.size(); i += 8)
      csv.add_row({hyd_1s.r[i], hyd_1s.radial_function[i]});
    csv.write(cfg.output_dir / "eigenfunction_hydrogen_1s.csv");
  }
  return rep;
}

// --------------------------------------------------------------------------
// dispersions
// --------------------------------------------------------------------------

report::ExperimentReport run_dispersions(const RunConfig& cfg) {
  ensure_dir(cfg);
  auto rep = make_report(cfg, "dispersions");
  const auto& c = cfg.constants;
  const double h2 = c.hbar * c.hbar;

  report::CsvWriter csv({"l", "m", "dLx2", "dLy2", "dLz2", "Lz_mean", "L2", "paper_L2", "gap"});
  double oracle_dev = 0.0, w2_min = 1e300, gap_dev = 0.0;
  for (int l = 0; l <= 5; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto r = rad::angular_momentum_oracle(l, m, c);
      if (m == l) oracle_dev = std::max(oracle_dev, std::abs(r.dLx2 - 0.5 * l * h2));
      const double w2 = r.dLx2 * r.dLy2 - 0.25 * h2 * r.Lz_mean * r.Lz_mean;
      w2_min = std::min(w2_min, w2);
      gap_dev = std::max(gap_dev, std::abs((r.paper_L2 - r.l_l_plus_1_hbar2) - 0.25 * h2));
      csv.add_row({static_cast<double>(l), static_cast<double>(m), r.dLx2, r.dLy2, r.dLz2,
                   r.Lz_mean, r.L2_total, r.paper_L2, r.paper_L2 - r.l_l_plus_1_hbar2});
    }
  }
  csv.write(cfg.output_dir / "dispersions.csv");

  rep.add_result("oracle_dLx2_max_deviation_at_m_eq_l", oracle_dev);
  rep.add_gate("oracle_transverse_dispersion", oracle_dev, 1e-12);
  {
    const auto r = rad::angular_momentum_oracle(1, 1, c);
    rep.add_result("oracle_dLz2_at_m_eq_l", r.dLz2);
    report::ScalarResult claim;
    claim.name = "stated_dLz2_claim";
    claim.value = r.paper_dLz2;
    claim.note = "the stated minimal dispersion takes <dLz^2> ~ hbar^2/4; the eigenstate value "
                 "is 0 -- reported side by side, only the oracle value is asserted";
    rep.add_result(claim);
  }
  rep.add_result("angular_uncertainty_inequality_min_margin", w2_min);
  rep.add_gate("angular_uncertainty_inequality", w2_min, -1e-12, ">=");
  rep.add_result("paper_gap_max_deviation_from_quarter_hbar2", gap_dev);
  rep.add_gate("quarter_hbar2_gap_reported", gap_dev, 1e-12);

  // complete-the-square identity (l hbar)^2 + l hbar^2 + hbar^2/4 == (l hbar + hbar/2)^2
  {
    double dev = 0.0;
    for (int l = 0; l <= 10; ++l) {
      const double lhs = (l * c.hbar) * (l * c.hbar) + l * h2 + 0.25 * h2;
      const double rhs = (l * c.hbar + 0.5 * c.hbar) * (l * c.hbar + 0.5 * c.hbar);
      dev = std::max(dev, std::abs(lhs - rhs));
    }
    rep.add_result("complete_square_identity_max_deviation", dev);
    rep.add_gate("complete_square_identity", dev, 1e-12);
  }

  // minimal-dispersion solutions
  {
    const auto cyl = rad::minimal_dispersion_solver(1.0 * c.hbar, rad::Symmetry::cylindrical, c);
    rep.add_result("minimal_dispersion_l1_L2", cyl.L2_total);
    rep.add_gate("minimal_dispersion_l1_total", std::abs(cyl.L2_total - 2.25 * h2), 1e-12);
    const auto sph = rad::minimal_dispersion_solver(0.0, rad::Symmetry::spherical, c);
    const double sum = sph.dLx2 + sph.dLy2 + sph.dLz2;
    rep.add_result("minimal_dispersion_spherical_sum", sum);
    rep.add_gate("minimal_dispersion_spherical_sum", std::abs(sum - 0.75 * h2), 1e-12);
  }
  return rep;
}

// --------------------------------------------------------------------------

report::ExperimentReport run_experiment(const RunConfig& cfg) {
  if (cfg.experiment == "kernels") return run_kernels(cfg);
  if (cfg.experiment == "paths") return run_paths(cfg);
  if (cfg.experiment == "evolve") return run_evolve(cfg);
  if (cfg.experiment == "wkb") return run_wkb(cfg);
  if (cfg.experiment == "radial") return run_radial(cfg);
  if (cfg.experiment == "dispersions") return run_dispersions(cfg);
  if (cfg.experiment != "all")
    throw std::invalid_argument("unknown experiment verb: " + cfg.experiment);

  auto rep = make_report(cfg, "all");
  for (const auto* name : {"kernels", "paths", "evolve", "wkb", "radial", "dispersions"}) {
    RunConfig sub = cfg;
    sub.experiment = name;
    auto part = run_experiment(sub);
    for (auto& r : part.results) {
      r.name = std::string(name) + "." + r.name;
      rep.results.push_back(std::move(r));
    }
    for (auto& g : part.gates) {
      g.name = std::string(name) + "." + g.name;
      rep.gates.push_back(std::move(g));
    }
  }
  return rep;
}

std::string write_report(const RunConfig& cfg, const report::ExperimentReport& rep) {
  ensure_dir(cfg);
  const std::string text = report::to_json_string(rep);
  report::write_text_atomic(cfg.output_dir / "report.json", text);
  return text;
}

}  // namespace furthlab::exp
