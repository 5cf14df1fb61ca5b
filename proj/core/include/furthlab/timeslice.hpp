#pragma once

#include <complex>
#include <vector>

#include "furthlab/constants.hpp"
#include "furthlab/grid.hpp"
#include "furthlab/potential.hpp"

namespace furthlab::timeslice {

enum class PotentialMode { expanded_first_order, full_exponential };

struct EvolutionConfig {
  double epsilon = 0.01;
  std::size_t n_steps = 1;
  PotentialMode mode = PotentialMode::full_exponential;
  PhysicsConstants constants;
  double damping = 0.0;          // exp(-damping*eta^2) on the kinetic chirp
  double eta_half_range = 0.0;   // 0 = integrate eta over the whole grid
  bool renormalize_each_step = false;

  /// A = sqrt(2 pi i hbar eps / m), same branch as the quantum kernel.
  std::complex<double> normalization() const;
  double total_time() const { return epsilon * static_cast<double>(n_steps); }
};

/// Smallest grid point count for which the kinetic chirp exp(i m eta^2/(2 hbar eps))
/// stays below Nyquist over the whole eta range: dx * m * span / (hbar * eps) <= pi.
/// Coarser grids make the iterated step exponentially unstable.
std::size_t required_points(const Grid1D& grid, double epsilon, const PhysicsConstants& c);

/// One short-time slice
///   psi(x, t+eps) = (1/A) int exp(i m eta^2/(2 hbar eps)) * potfac(x + eta/2) * psi(x+eta) deta
/// with potfac = exp(-i eps U/hbar) (full) or 1 - i eps U/hbar (expanded).
/// Throws if the grid violates required_points, or in expanded mode if
/// max|U| * eps / hbar >= 0.1 (suggests a workable eps in the message).
WaveFunction short_time_step(const WaveFunction& psi, const EvolutionConfig& config,
                             const PotentialSpec& potential);

struct EvolutionResult {
  std::vector<WaveFunction> snapshots;   // n_steps + 1 entries, includes psi0
  std::vector<double> norm_drift;        // |norm_after - norm_before| per step
};

/// n_steps applications of short_time_step. Aborts (throws) if the cumulative
/// norm drift exceeds 1e-2.
EvolutionResult evolve(const WaveFunction& psi0, const EvolutionConfig& config,
                       const PotentialSpec& potential);

/// Max-norm discrete residual of i hbar dPsi/dt = -(hbar^2/2m) lap Psi + U Psi
/// over interior points/times, central differences in both t and x.
double schrodinger_residual(const std::vector<WaveFunction>& snapshots, double epsilon,
                            const PotentialSpec& potential, const PhysicsConstants& constants);

/// Strang split-operator reference on the same grid (periodic FFT boundaries);
/// oracle only. substeps_per_step subdivides each eps for higher fidelity.
WaveFunction spectral_reference_evolve(const WaveFunction& psi0, const EvolutionConfig& config,
                                       const PotentialSpec& potential,
                                       std::size_t substeps_per_step = 1);

}  // namespace furthlab::timeslice
