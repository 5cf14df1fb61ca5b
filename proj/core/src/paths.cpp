#include "furthlab/paths.hpp"

#include <cmath>
#include <stdexcept>

#include "furthlab/numerics.hpp"
#include "furthlab/rng.hpp"

namespace furthlab::paths {

std::size_t PathEnsemble::n_increments() const {
  std::size_t n = 0;
  for (const auto& p : paths) n += p.n_steps();
  return n;
}

void EstimatorReport::attach_claim(double claim) {
  paper_claim = claim;
  if (stderr_of_mean > 0.0) discrepancy_sigma = std::abs(estimate - claim) / stderr_of_mean;
}

PathEnsemble sample_wiener_ensemble(std::size_t n_paths, std::size_t n_steps, double epsilon,
                                    double diffusivity, double drift, std::uint64_t master_seed,
                                    const PhysicsConstants& constants) {
  if (n_paths < 1) throw std::domain_error("sample_wiener_ensemble: n_paths must be >= 1");
  if (n_steps < 2) throw std::domain_error("sample_wiener_ensemble: n_steps must be >= 2");
  if (!(epsilon > 0.0)) throw std::domain_error("sample_wiener_ensemble: epsilon must be > 0");
  if (!(diffusivity > 0.0)) throw std::domain_error("sample_wiener_ensemble: D must be > 0");

  PathEnsemble ensemble;
  ensemble.constants = constants;
  ensemble.master_seed = master_seed;
  ensemble.epsilon = epsilon;
  ensemble.drift = drift;
  ensemble.diffusivity = diffusivity;
  ensemble.paths.resize(n_paths);

  const double sigma = std::sqrt(2.0 * diffusivity * epsilon);
  const double mean = drift * epsilon;
  parallel_for(n_paths, [&](std::size_t i) {
    Path& p = ensemble.paths[i];
    p.epsilon = epsilon;
    p.drift = drift;
    p.seed_stream_id = i;
    p.positions.resize(n_steps + 1);
    p.positions[0] = 0.0;
    CounterRng rng(master_seed, i);
    for (std::size_t s = 0; s < n_steps; ++s)
      p.positions[s + 1] = p.positions[s] + mean + sigma * rng.normal();
  });
  return ensemble;
}

namespace {
/// Collects one value per increment (or interior point) in a fixed order so
/// the pairwise reduction is independent of threading.
template <typename F>
std::vector<double> per_increment(const PathEnsemble& e, F f) {
  std::vector<double> out;
  for (const auto& p : e.paths)
    for (std::size_t s = 0; s + 1 < p.positions.size(); ++s)
      out.push_back(f(p.positions[s + 1] - p.positions[s]));
  return out;
}

template <typename F>
std::vector<double> per_interior(const PathEnsemble& e, F f) {
  std::vector<double> out;
  for (const auto& p : e.paths)
    for (std::size_t s = 1; s + 1 < p.positions.size(); ++s) {
      const double dplus = p.positions[s + 1] - p.positions[s];
      const double dminus = p.positions[s] - p.positions[s - 1];
      out.push_back(f(dplus, dminus));
    }
  return out;
}
}  // namespace

EstimatorReport estimate_diffusion(const PathEnsemble& ensemble) {
  const double eps = ensemble.epsilon;
  const double de = ensemble.drift * eps;
  auto samples = per_increment(ensemble, [&](double dx) {
    const double r = dx - de;
    return r * r / (2.0 * eps);
  });
  const auto ms = mean_and_stderr(samples);
  EstimatorReport rep;
  rep.name = "diffusivity";
  rep.estimate = ms.mean;
  rep.stderr_of_mean = ms.stderr_of_mean;
  rep.n_samples = ms.n;
  rep.attach_claim(ensemble.diffusivity);
  return rep;
}

double diffusion_second_moment(const DensityField& increment_density, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("diffusion_second_moment: tau must be > 0");
  std::vector<double> f(increment_density.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = increment_density.grid.point(i);
    f[i] = x * x / (2.0 * tau) * increment_density.values[i];
  }
  return trapezoid(f, increment_density.grid.dx());
}

ForwardBackward forward_backward_velocity(const Path& path, std::size_t n) {
  if (n < 1 || n + 1 > path.n_steps())
    throw std::domain_error("forward_backward_velocity: index must be interior (1..n_steps-1)");
  ForwardBackward fb;
  fb.v_plus = (path.positions[n + 1] - path.positions[n]) / path.epsilon;
  fb.v_minus = (path.positions[n] - path.positions[n - 1]) / path.epsilon;
  return fb;
}

EstimatorReport nondifferentiability_gap(const PathEnsemble& ensemble) {
  const double eps = ensemble.epsilon;
  auto sq = per_interior(ensemble, [&](double dp, double dm) {
    const double g = (dp - dm) / eps;
    return g * g;
  });
  const auto ms = mean_and_stderr(sq);
  EstimatorReport rep;
  rep.name = "rms_velocity_gap";
  rep.estimate = std::sqrt(ms.mean);
  // delta-method stderr for sqrt(mean)
  rep.stderr_of_mean = ms.mean > 0.0 ? 0.5 * ms.stderr_of_mean / std::sqrt(ms.mean) : 0.0;
  rep.n_samples = ms.n;
  rep.attach_claim(std::sqrt(4.0 * ensemble.diffusivity / eps));
  return rep;
}

GapScaling nondifferentiability_scaling(std::span<const double> epsilons, std::size_t n_paths,
                                        std::size_t n_steps, double diffusivity, double drift,
                                        std::uint64_t master_seed) {
  if (epsilons.size() < 2)
    throw std::invalid_argument("nondifferentiability_scaling: need >= 2 epsilons");
  GapScaling out;
  std::vector<double> lx, ly;
  std::uint64_t stream_base = 0;
  for (double eps : epsilons) {
    // distinct stream ids per epsilon keep the sweep points independent
    auto ensemble = sample_wiener_ensemble(n_paths, n_steps, eps, diffusivity, drift,
                                           CounterRng::mix64(master_seed + stream_base));
    stream_base += 0x10001;
    const auto gap = nondifferentiability_gap(ensemble);
    out.epsilons.push_back(eps);
    out.rms_gaps.push_back(gap.estimate);
    lx.push_back(std::log(eps));
    ly.push_back(std::log(gap.estimate));
  }
  out.log_log_slope = linear_fit(lx, ly).slope;
  return out;
}

EstimatorReport osmotic_speed(const PathEnsemble& ensemble) {
  const double eps = ensemble.epsilon;
  auto samples = per_increment(ensemble, [&](double dx) { return dx * dx / (eps * eps); });
  const auto ms = mean_and_stderr(samples);
  EstimatorReport rep;
  rep.name = "osmotic_speed_squared";
  rep.estimate = ms.mean;
  rep.stderr_of_mean = ms.stderr_of_mean;
  rep.n_samples = ms.n;
  rep.attach_claim(2.0 * ensemble.diffusivity / eps);
  return rep;
}

OsmoticPaperValues osmotic_speed_paper_values(const PathEnsemble& ensemble) {
  OsmoticPaperValues v;
  v.eq_g = 2.0 * ensemble.diffusivity / ensemble.epsilon;
  v.eq_t = ensemble.constants.hbar / (2.0 * ensemble.constants.mass * ensemble.epsilon);
  return v;
}

KineticEstimators kinetic_energy_estimators(const PathEnsemble& ensemble) {
  const double eps = ensemble.epsilon;
  const double m = ensemble.constants.mass;
  // one-sided-squares form: m(d+x)^2/(2eps)^2 + m(d-x)^2/(2eps)^2 per point
  auto naive = per_interior(ensemble, [&](double dp, double dm) {
    return m * (dp * dp + dm * dm) / (4.0 * eps * eps);
  });
  // symmetric product form: m (d+x)(d-x) / (2 eps^2)
  auto symmetric = per_interior(ensemble, [&](double dp, double dm) {
    return m * dp * dm / (2.0 * eps * eps);
  });
  const auto msn = mean_and_stderr(naive);
  const auto mss = mean_and_stderr(symmetric);
  KineticEstimators est;
  est.naive.name = "kinetic_naive";
  est.naive.estimate = msn.mean;
  est.naive.stderr_of_mean = msn.stderr_of_mean;
  est.naive.n_samples = msn.n;
  est.symmetric.name = "kinetic_symmetric";
  est.symmetric.estimate = mss.mean;
  est.symmetric.stderr_of_mean = mss.stderr_of_mean;
  est.symmetric.n_samples = mss.n;
  const double v0 = ensemble.drift;
  est.naive.attach_claim(0.5 * m * v0 * v0 + m * ensemble.diffusivity / eps);
  est.symmetric.attach_claim(0.5 * m * v0 * v0);
  return est;
}

UncertaintyChain uncertainty_products(double epsilon, const PhysicsConstants& constants) {
  if (!(epsilon > 0.0)) throw std::domain_error("uncertainty_products: epsilon must be > 0");
  constants.validate();
  const double hbar = constants.hbar, m = constants.mass;
  UncertaintyChain c;
  c.epsilon = epsilon;
  c.dx_squared = hbar * epsilon / m;               // 2 D eps with D = hbar/2m
  c.mean_dx_squared = 0.5 * c.dx_squared;          // stated averaging convention
  c.mean_dp_squared = m * hbar / (2.0 * epsilon);
  c.position_momentum_product = c.mean_dp_squared * c.mean_dx_squared;
  c.position_momentum_claim = 0.25 * hbar * hbar;  // (hbar/2)^2
  const double u_sq = hbar / (2.0 * m * epsilon);
  c.delta_e = 0.5 * m * u_sq;                      // = hbar/(4 eps)
  c.delta_t = epsilon;
  c.energy_time_product = (c.delta_e * c.delta_t) * (c.delta_e * c.delta_t);  // (hbar/4)^2
  c.energy_time_claim = 0.25 * hbar * hbar;        // the claim as printed
  c.energy_time_discrepancy_factor = c.energy_time_claim / c.energy_time_product;
  return c;
}

}  // namespace furthlab::paths
