#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "furthlab/constants.hpp"
#include "furthlab/grid.hpp"

namespace furthlab::paths {

/// One sampled discrete-time path: positions at t_n = n*epsilon, x_0 = 0.
struct Path {
  double epsilon = 0.0;
  double drift = 0.0;
  std::uint64_t seed_stream_id = 0;
  std::vector<double> positions;  // n_steps + 1 entries

  std::size_t n_steps() const { return positions.empty() ? 0 : positions.size() - 1; }
};

struct PathEnsemble {
  std::vector<Path> paths;
  PhysicsConstants constants;
  std::uint64_t master_seed = 0;
  double epsilon = 0.0;
  double drift = 0.0;
  double diffusivity = 0.0;  // D used for sampling (need not equal constants.diffusivity())

  std::size_t n_increments() const;
};

struct EstimatorReport {
  std::string name;
  double estimate = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t n_samples = 0;
  std::optional<double> paper_claim;
  std::optional<double> discrepancy_sigma;  // |estimate - paper_claim| / stderr

  void attach_claim(double claim);
};

/// Increments i.i.d. Gaussian, mean drift*epsilon, variance 2*D*epsilon.
/// Deterministic: path i uses the counter stream (master_seed, i).
PathEnsemble sample_wiener_ensemble(std::size_t n_paths, std::size_t n_steps, double epsilon,
                                    double diffusivity, double drift, std::uint64_t master_seed,
                                    const PhysicsConstants& constants = {});

/// Second-moment diffusivity estimator: mean of (dx - drift*eps)^2 / (2 eps).
EstimatorReport estimate_diffusion(const PathEnsemble& ensemble);

/// Quadrature analogue of estimate_diffusion: int x^2/(2 tau) w(x) dx for a
/// transition density sampled at lag tau.
double diffusion_second_moment(const DensityField& increment_density, double tau);

struct ForwardBackward {
  double v_plus = 0.0;
  double v_minus = 0.0;
};

/// One-sided difference quotients at interior index n (1 <= n <= n_steps-1).
ForwardBackward forward_backward_velocity(const Path& path, std::size_t n);

/// RMS of (v+ - v-) over all interior points of the ensemble.
EstimatorReport nondifferentiability_gap(const PathEnsemble& ensemble);

struct GapScaling {
  std::vector<double> epsilons;
  std::vector<double> rms_gaps;
  double log_log_slope = 0.0;  // expected -1/2 for Wiener paths
};

/// Resamples ensembles over the given epsilon sweep (same master seed, stream
/// ids offset per epsilon) and fits log(RMS gap) vs log(eps).
GapScaling nondifferentiability_scaling(std::span<const double> epsilons, std::size_t n_paths,
                                        std::size_t n_steps, double diffusivity, double drift,
                                        std::uint64_t master_seed);

/// u^2 estimated as mean (dx)^2/eps^2; paper_claim carries the stated scale
/// 2D/eps. The alternate stated value hbar/(2 m eps) is returned separately by
/// osmotic_speed_paper_values (the two disagree by a factor 2 at D = hbar/2m).
EstimatorReport osmotic_speed(const PathEnsemble& ensemble);

struct OsmoticPaperValues {
  double eq_g = 0.0;  // 2D/eps
  double eq_t = 0.0;  // hbar/(2 m eps); differs from eq_g by factor 2 at D = hbar/2m
};
OsmoticPaperValues osmotic_speed_paper_values(const PathEnsemble& ensemble);

struct KineticEstimators {
  EstimatorReport naive;      // m[(d+x)^2 + (d-x)^2]/(2eps)^2 per interior point ("wrong")
  EstimatorReport symmetric;  // m (d+x)(d-x)/(2 eps^2) per interior point ("correct")
};

KineticEstimators kinetic_energy_estimators(const PathEnsemble& ensemble);

/// The dispersion chain of the stochastic-step picture, evaluated at eps.
struct UncertaintyChain {
  double epsilon = 0.0;
  double dx_squared = 0.0;                 // squared step scale 2 D eps = hbar*eps/m
  double mean_dx_squared = 0.0;            // averaging convention: dx_squared/2
  double mean_dp_squared = 0.0;            // m*hbar/(2*eps)
  double position_momentum_product = 0.0;  // mean_dp_squared * mean_dx_squared
  double position_momentum_claim = 0.0;    // (hbar/2)^2
  double delta_e = 0.0;                    // m u^2/2 with u^2 = hbar/(2 m eps)
  double delta_t = 0.0;                    // eps
  double energy_time_product = 0.0;        // (dE * dt)^2 = (hbar/4)^2
  double energy_time_claim = 0.0;          // stated claim (hbar/2)^2
  double energy_time_discrepancy_factor = 0.0;  // claim / computed = 4
};

UncertaintyChain uncertainty_products(double epsilon, const PhysicsConstants& constants);

}  // namespace furthlab::paths
