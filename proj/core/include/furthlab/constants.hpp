#pragma once

#include <stdexcept>

namespace furthlab {

/// Sign convention for the free-propagator phase exp(±i m x²/(2ħt)).
/// `plus` solves iħ∂Ψ/∂t = -(ħ²/2m)ΔΨ under kernel propagation; `minus`
/// is the complex conjugate (opposite time convention).
enum class PhaseConvention { plus, minus };

struct PhysicsConstants {
  double hbar = 1.0;
  double mass = 1.0;
  PhaseConvention phase = PhaseConvention::plus;

  /// D = ħ/(2m). Always recomputed, never stored.
  double diffusivity() const { return hbar / (2.0 * mass); }

  void validate() const {
    if (!(hbar > 0.0)) throw std::domain_error("PhysicsConstants: hbar must be > 0");
    if (!(mass > 0.0)) throw std::domain_error("PhysicsConstants: mass must be > 0");
  }
};

}  // namespace furthlab
