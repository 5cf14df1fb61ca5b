#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace furthlab {

/// 1D / radial potential menu: free, harmonic(k) = k x^2/2, rectangular
/// barrier(height, width) centered at 0, regularized Coulomb
/// -charge/sqrt(x^2 + softening^2), and bare Coulomb -charge/r for radial use.
struct PotentialSpec {
  enum class Kind { free, harmonic, barrier, coulomb_regularized, coulomb };
  Kind kind = Kind::free;
  double k = 1.0;          // harmonic
  double height = 1.0;     // barrier
  double width = 1.0;      // barrier
  double charge = 1.0;     // coulomb / coulomb_regularized
  double softening = 0.1;  // coulomb_regularized

  double operator()(double x) const {
    switch (kind) {
      case Kind::free: return 0.0;
      case Kind::harmonic: return 0.5 * k * x * x;
      case Kind::barrier: return (x >= -0.5 * width && x <= 0.5 * width) ? height : 0.0;
      case Kind::coulomb_regularized: return -charge / std::sqrt(x * x + softening * softening);
      case Kind::coulomb: return -charge / x;
    }
    return 0.0;
  }

  void validate() const {
    if (kind == Kind::harmonic && !(k > 0.0))
      throw std::domain_error("PotentialSpec: harmonic k must be > 0");
    if (kind == Kind::barrier && !(width > 0.0))
      throw std::domain_error("PotentialSpec: barrier width must be > 0");
    if (kind == Kind::coulomb_regularized && !(softening > 0.0))
      throw std::domain_error("PotentialSpec: softening must be > 0");
  }

  static PotentialSpec free_particle() { return {}; }
  static PotentialSpec harmonic(double spring_k) {
    PotentialSpec p; p.kind = Kind::harmonic; p.k = spring_k; return p;
  }
  static PotentialSpec barrier(double height, double width) {
    PotentialSpec p; p.kind = Kind::barrier; p.height = height; p.width = width; return p;
  }
  static PotentialSpec coulomb_regularized(double charge, double softening) {
    PotentialSpec p; p.kind = Kind::coulomb_regularized; p.charge = charge; p.softening = softening;
    return p;
  }
  static PotentialSpec coulomb(double charge) {
    PotentialSpec p; p.kind = Kind::coulomb; p.charge = charge; return p;
  }

  std::string name() const {
    switch (kind) {
      case Kind::free: return "free";
      case Kind::harmonic: return "harmonic";
      case Kind::barrier: return "barrier";
      case Kind::coulomb_regularized: return "coulomb_regularized";
      case Kind::coulomb: return "coulomb";
    }
    return "?";
  }
};

}  // namespace furthlab
