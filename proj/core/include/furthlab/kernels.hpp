#pragma once

#include <complex>
#include <span>
#include <vector>

#include "furthlab/constants.hpp"
#include "furthlab/grid.hpp"

namespace furthlab::kernels {

enum class KernelKind { heat, quantum };

/// Heat kernel (4 pi D tau)^{-1/2} exp(-x^2/(4 D tau)). Even in x.
double heat_kernel(double displacement, double tau, double diffusivity);

/// Free quantum propagator sqrt(m/(2 pi i hbar t)) exp(i m x^2/(2 hbar t)),
/// branch sqrt(1/i) = e^{-i pi/4}. constants.phase == minus conjugates it.
/// Modulus sqrt(m/(2 pi hbar t)) is x-independent.
std::complex<double> quantum_kernel(double displacement, double t,
                                    const PhysicsConstants& constants);

/// Default probe displacements for the composition residuals.
std::vector<double> default_test_displacements();

/// Max-norm over test displacements of
///   | int K(x1->x3, s*tau) K(x3->x2, (1-s)*tau) dx3  -  K(x1->x2, tau) |.
/// The quadrature runs on `grid` for the heat kernel. For the quantum kernel
/// the oscillatory integral is regularized by exp(-damping*eta^2) with eta
/// measured from the stationary-phase point; the quadrature window follows the
/// damping scale (grid supplies the resolution floor). damping == 0 with the
/// quantum kernel is rejected: the undamped Fresnel quadrature does not
/// converge.
double chapman_kolmogorov_residual(KernelKind kind, double tau_total, double split,
                                   const Grid1D& grid, double damping,
                                   const PhysicsConstants& constants,
                                   std::span<const double> test_displacements = {});

struct KernelTable {
  Grid1D grid;
  std::vector<std::complex<double>> values;  // imaginary part zero for heat
};

/// n-fold Chapman-Kolmogorov composition of the tau/n slice kernel, sampled on
/// `grid`. n_slices == 1 returns the direct kernel evaluation bit-for-bit.
/// Quantum slices carry exp(-damping*x^2) each; composition is an FFT
/// convolution on an internal grid sized for the damping tail and slice chirp.
KernelTable multi_slice_kernel(KernelKind kind, double tau_total, std::size_t n_slices,
                               const Grid1D& grid, double damping,
                               const PhysicsConstants& constants);

/// Direct (single-kernel) table on the grid, for comparisons.
KernelTable direct_kernel_table(KernelKind kind, double tau, const Grid1D& grid,
                                double damping, const PhysicsConstants& constants);

struct PropagatedDensity {
  DensityField density;
  double mass_defect = 0.0;      // |1 - mass| before any renormalization
  bool leakage_warning = false;  // mass_defect > 1e-6
};

/// Density convolved with the heat kernel on the grid (zero padding outside).
PropagatedDensity propagate_density(const DensityField& w0, double tau, double diffusivity);

struct PropagatedWave {
  WaveFunction wave;
  double norm_defect = 0.0;
  bool leakage_warning = false;
};

/// Wavefunction convolved with the quantum kernel, evaluated through the
/// kernel's exact Fourier symbol (damping > 0 folds exp(-damping*eta^2) into
/// the symbol analytically). Periodic images are the only grid artifact; keep
/// the packet away from the edges.
PropagatedWave propagate_wavefunction(const WaveFunction& psi0, double t,
                                      const PhysicsConstants& constants, double damping = 0.0);

/// One explicit flux-form Fokker-Planck step dW/dt = -d(Wv)/dx + D d2W/dx2
/// with zero-flux boundaries. Rejects dt > dx^2/(4D) (explicit stability).
DensityField fokker_planck_step(const DensityField& w, std::span<const double> drift,
                                double diffusivity, double dt);

/// int K_damped dx over a window following the damping scale (Fresnel
/// normalization probe; heat kernel works too with damping 0 on `grid`).
std::complex<double> damped_kernel_integral(KernelKind kind, double tau, double damping,
                                            const Grid1D& grid, const PhysicsConstants& constants);

}  // namespace furthlab::kernels
