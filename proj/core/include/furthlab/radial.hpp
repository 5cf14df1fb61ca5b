#pragma once

#include <optional>
#include <vector>

#include "furthlab/constants.hpp"
#include "furthlab/grid.hpp"
#include "furthlab/potential.hpp"

namespace furthlab::radial {

enum class Geometry { spherical, cylindrical };

/// Radial bound-state problem on a log-radius grid r_i = r_min e^{i dt}.
///
/// spherical: d2R/dr2 + (2/r) dR/dr + [2m/hbar^2 (E-U) - l(l+1)/r^2] R = 0,
/// integrated in y = sqrt(r) R, for which y_tt = [(l+1/2)^2 + 2m r^2 (U-E)/hbar^2] y
/// on t = ln r. cylindrical: the standard 2D radial equation with azimuthal
/// index m = l (Phi ~ rho^l at the origin), integrated directly in Phi(t):
/// Phi_tt = [l^2 + 2m rho^2 (U-E)/hbar^2] Phi. The half-integer-index
/// cylindrical form with the (l+1/2)^2 centrifugal term is what the spherical
/// log-grid function satisfies; see spherical_to_cylindrical_map /
/// separation_check.
struct RadialProblem {
  Geometry geometry = Geometry::spherical;
  int angular_index = 0;  // l >= 0
  PotentialSpec potential;
  double r_max = 40.0;
  double r_min = 1e-5;
  std::size_t n_points = 6000;
  PhysicsConstants constants;

  /// l(l+1) for spherical, (l+1/2)^2 for cylindrical: the centrifugal
  /// coefficients of the two second-order radial forms for this angular index.
  double centrifugal_coefficient() const;

  void validate() const;
  std::vector<double> radii() const;      // log-spaced
  double log_spacing() const;
};

struct EigenSolution {
  Geometry geometry = Geometry::spherical;
  int angular_index = 0;
  double energy = 0.0;
  std::vector<double> r;                // log-spaced radii
  std::vector<double> radial_function;  // R(r) (spherical) or Phi(rho) (cylindrical), unit norm
  std::vector<double> working_function; // y = sqrt(r) R, resp. Phi; what Numerov integrated
  int node_count = 0;
  double residual = 0.0;                // Numerov 3-term defect / max|y|
};

/// Shooting eigensolver; n_radial = requested node count. The energy window
/// defaults to [1.0001*U_min, 0) when the potential is negative somewhere
/// (Coulomb-like) and [U_min, U_min+50] otherwise; |dE| converged to 1e-10.
EigenSolution numerov_eigensolve(const RadialProblem& problem, int n_radial,
                                 std::optional<std::pair<double, double>> energy_window = {});

struct MappedSolution {
  EigenSolution solution;  // cylindrical-form: Phi = sqrt(rho) R on the same radii
  double residual = 0.0;   // rho^2-weighted cylindrical-form residual, relative max-norm
};

/// The r,R -> rho, Phi/sqrt(rho) exchange: builds Phi = sqrt(rho) R
/// from a spherical solution and evaluates the discrete residual of the
/// cylindrical-form equation with centrifugal coefficient (l+1/2)^2.
MappedSolution spherical_to_cylindrical_map(const EigenSolution& spherical,
                                            const RadialProblem& problem);

/// Assembles Psi = Phi(rho) e^{i lambda phi} e^{i k_z z} with lambda = l + 1/2
/// (or lambda_override) and returns the rho^2-weighted relative max-norm
/// residual of the full cylindrical equation, with E shifted by hbar^2 k_z^2/2m.
/// phi/z second derivatives use central differences on a fine local stencil.
double separation_check(const MappedSolution& phi, int angular_index, double k_z,
                        const RadialProblem& problem,
                        std::optional<double> lambda_override = {});

/// Energy shift supplied by the free z motion.
double separation_energy_shift(double k_z, const PhysicsConstants& constants);

enum class Symmetry { cylindrical, spherical };

struct AngularMomentumReport {
  int l = 0;
  int m = 0;
  double dLx2 = 0.0, dLy2 = 0.0, dLz2 = 0.0;
  double Lz_mean = 0.0;
  double L2_total = 0.0;
  // stated reference values, reported beside the computed ones
  double paper_dLx2 = 0.0;      // l hbar^2/2
  double paper_dLz2 = 0.0;      // hbar^2/4
  double paper_L2 = 0.0;        // (l hbar + hbar/2)^2
  double l_l_plus_1_hbar2 = 0.0;  // hbar^2 l(l+1)
};

/// Equality case of the coupled angular-momentum uncertainty inequalities
/// under the stated symmetry ansatz. Lz_mean must be an integer multiple of
/// hbar (cylindrical) or 0 (spherical).
AngularMomentumReport minimal_dispersion_solver(double Lz_mean, Symmetry symmetry,
                                                const PhysicsConstants& constants);

/// Exact dispersions on the |l,m> basis state from the (2l+1)-dimensional
/// matrix representation built with ladder operators. Requires |m| <= l.
AngularMomentumReport angular_momentum_oracle(int l, int m, const PhysicsConstants& constants);

/// Radial-momentum dispersion floor <dPr^2> >= hbar^2 / (4 <dr^2>)
/// (the as-printed form multiplies instead of dividing; division is the
/// dimensionally consistent reading and is what this returns).
double radial_momentum_floor(double delta_r_sq, const PhysicsConstants& constants);

struct RadialMoments {
  double r_mean = 0.0;
  double r2_mean = 0.0;
  double delta_r_sq = 0.0;
  double pr2_mean = 0.0;  // <P_r^2> = hbar^2 int u'^2 dr with u = r R (spherical)
  double potential_mean = 0.0;
};

RadialMoments radial_moments(const EigenSolution& solution, const RadialProblem& problem);

// --- 1D mode (oracle for the WKB module) -----------------------------------

struct Eigenstate1D {
  double energy = 0.0;
  Grid1D grid;                 // symmetric full line
  std::vector<double> values;  // L2-normalized, real
  int nodes = 0;
};

/// Bound state of a symmetric 1D potential by half-line Numerov shooting with
/// parity boundary conditions (parity = n mod 2), mirrored to the full line.
Eigenstate1D numerov_eigensolve_1d(const PotentialSpec& potential, int n, double x_max,
                                   std::size_t n_half_points,
                                   const PhysicsConstants& constants = {},
                                   std::optional<std::pair<double, double>> energy_window = {});

}  // namespace furthlab::radial
