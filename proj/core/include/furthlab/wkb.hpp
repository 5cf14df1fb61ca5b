#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "furthlab/constants.hpp"
#include "furthlab/grid.hpp"
#include "furthlab/potential.hpp"

namespace furthlab::wkb {

enum class Regime { allowed, forbidden };

struct LocalMomentum {
  double value = 0.0;  // sqrt(2m|E-U|); the regime tag carries the factor i
  Regime regime = Regime::allowed;
};

/// p = sqrt(2m(E-U)) where U < E, |p| = sqrt(2m(U-E)) where U > E.
/// At U == E returns 0 tagged allowed (side convention).
LocalMomentum local_momentum(double energy, const PotentialSpec& potential, double x,
                             const PhysicsConstants& constants);

struct TurningPoints {
  double energy = 0.0;
  std::vector<double> points;  // ordered roots of U(x) == E in the scanned window
};

TurningPoints find_turning_points(double energy, const PotentialSpec& potential, double x_lo,
                                  double x_hi, const PhysicsConstants& constants,
                                  std::size_t scan_points = 4096);

struct ActionIntegrals {
  double s_real = 0.0;                // int p dx (allowed) or int |p| dx (forbidden)
  std::vector<double> sample_x;       // interior sample points
  std::vector<double> amplitude_log;  // (1/2) ln p at the samples (amplitude exponent)
};

/// Adaptive quadrature of the action over [a, b]; the interval must lie inside
/// a single regime (endpoints may be turning points — the integrable p -> 0
/// endpoint singularity is handled by a tanh-sinh transform). Throws if an
/// interior turning point splits the interval.
ActionIntegrals action_integrals(double energy, const PotentialSpec& potential, double a,
                                 double b, std::size_t n_quad,
                                 const PhysicsConstants& constants);

/// Amplitudes of the two-branch quasiclassical form. Allowed region:
/// p^{-1/2} (c1 e^{iS/hbar} + c2 e^{-iS/hbar}) with S measured from the left
/// turning point; forbidden tails: single decaying branch |p|^{-1/2} e^{-S/hbar}
/// with S measured from the adjacent turning point.
struct WkbMatching {
  std::complex<double> c1{1.0, 0.0};
  std::complex<double> c2{0.0, 0.0};
  std::complex<double> c_forbidden_left{0.0, 0.0};
  std::complex<double> c_forbidden_right{0.0, 0.0};

  /// c1/c2 conjugate pair that realizes A cos(S/hbar - pi/4).
  static WkbMatching cosine_form(double amplitude = 1.0);
};

struct WkbWave {
  WaveFunction wave;               // unnormalized
  std::vector<std::uint8_t> mask;  // 1 = inside a turning-point guard band
  TurningPoints turning_points;
  double guard_width = 0.0;
};

/// Quasiclassical wavefunction on the grid for a single-well layout
/// (forbidden | allowed | forbidden). Grid points within guard_fraction of the
/// allowed-segment length around each turning point are masked and zeroed.
WkbWave wkb_wavefunction(double energy, const PotentialSpec& potential, const Grid1D& grid,
                         const WkbMatching& matching, const PhysicsConstants& constants,
                         double guard_fraction = 0.10);

struct EnergyDecomposition {
  double p_mean = 0.0;       // <p> (zero current for real states)
  double p_abs_mean = 0.0;   // <|p|>, reported but never asserted on
  double dp2 = 0.0;          // <p^2> - <p>^2
  double kinetic_mean = 0.0;     // <p^2>/2m
  double potential_mean = 0.0;   // <U>
  double energy_total = 0.0;     // p_mean^2/2m + dp2/2m + <U>
  double residual = 0.0;         // |E - energy_total|
};

/// Energy decomposition check E = <p>^2/2m + <(dp)^2>/2m + <U>. Momentum moments are
/// computed spectrally (FFT) on the grid.
EnergyDecomposition energy_decomposition_check(const WaveFunction& eigenstate, double energy,
                                               const PotentialSpec& potential,
                                               const PhysicsConstants& constants);

}  // namespace furthlab::wkb
