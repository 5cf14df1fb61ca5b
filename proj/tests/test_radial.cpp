// Radial eigensolver oracles:
//   hydrogen (a.u.): E_n = -1/(2(n_r + l + 1)^2)
//   3D isotropic harmonic: E = (2 n_r + l + 3/2) hbar w
//   standard 2D harmonic (m = l): E = (2 n_r + |m| + 1) hbar w
// plus the spherical -> cylindrical substitution map and the angular-momentum algebra.
#include <doctest.h>

#include <cmath>

#include "furthlab/radial.hpp"

using namespace furthlab;
namespace rad = furthlab::radial;

namespace {
const PhysicsConstants kNatural{};

rad::RadialProblem hydrogen_problem(int l = 0) {
  rad::RadialProblem p;
  p.geometry = rad::Geometry::spherical;
  p.angular_index = l;
  p.potential = PotentialSpec::coulomb(1.0);
  p.r_min = 1e-5;
  p.r_max = 45.0;
  p.n_points = 5000;
  p.constants = kNatural;
  return p;
}

rad::RadialProblem harmonic_problem(rad::Geometry geom, int l = 0) {
  rad::RadialProblem p;
  p.geometry = geom;
  p.angular_index = l;
  p.potential = PotentialSpec::harmonic(1.0);
  p.r_min = 1e-6;
  p.r_max = 12.0;
  p.n_points = 5000;
  p.constants = kNatural;
  return p;
}
}  // namespace

TEST_SUITE("radial") {

TEST_CASE("hydrogen s-states land on -1/(2 n^2)") {
  const auto p = hydrogen_problem();
  const auto s0 = rad::numerov_eigensolve(p, 0);
  CHECK(s0.energy == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(s0.node_count == 0);
  const auto s1 = rad::numerov_eigensolve(p, 1);
  CHECK(s1.energy == doctest::Approx(-0.125).epsilon(1e-8));
  CHECK(s1.node_count == 1);
}

TEST_CASE("harmonic ground states: 1.5 spherical, 1.0 cylindrical") {
  const auto s3 = rad::numerov_eigensolve(harmonic_problem(rad::Geometry::spherical), 0);
  CHECK(std::abs(s3.energy - 1.5) < 1e-8);
  const auto s2 = rad::numerov_eigensolve(harmonic_problem(rad::Geometry::cylindrical), 0);
  CHECK(std::abs(s2.energy - 1.0) < 1e-8);
}

TEST_CASE("eigen solutions honor the boundary and residual invariants") {
  const auto sol = rad::numerov_eigensolve(hydrogen_problem(), 0);
  double wmax = 0.0;
  for (double v : sol.working_function) wmax = std::max(wmax, std::abs(v));
  CHECK(std::abs(sol.working_function.back()) < 1e-8 * wmax);
  CHECK(sol.residual < 1e-8);
}

TEST_CASE("energies increase strictly with the node count") {
  const auto p = harmonic_problem(rad::Geometry::spherical, 1);
  double prev = -1e300;
  for (int n = 0; n <= 3; ++n) {
    const auto s = rad::numerov_eigensolve(p, n);
    CHECK(s.energy > prev);
    CHECK(s.node_count == n);
    prev = s.energy;
  }
}

TEST_CASE("missing bracket reports the window") {
  const auto p = hydrogen_problem();
  CHECK_THROWS_WITH_AS(rad::numerov_eigensolve(p, 0, std::make_pair(-0.4, -0.3)),
                       doctest::Contains("no bracket"), std::runtime_error);
}

TEST_CASE("centrifugal coefficients of the two radial forms") {
  auto p = hydrogen_problem(2);
  CHECK(p.centrifugal_coefficient() == doctest::Approx(6.0));
  p.geometry = rad::Geometry::cylindrical;
  CHECK(p.centrifugal_coefficient() == doctest::Approx(6.25));
}

TEST_CASE("spherical -> cylindrical map: residual, round trip, norm") {
  const auto p = hydrogen_problem();
  const auto sol = rad::numerov_eigensolve(p, 0);
  const auto mapped = rad::spherical_to_cylindrical_map(sol, p);
  CHECK(mapped.residual < 1e-6);

  SUBCASE("Phi / sqrt(rho) recovers R pointwise") {
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
      const double back = mapped.solution.radial_function[i] / std::sqrt(sol.r[i]);
      CHECK(std::abs(back - sol.radial_function[i]) <=
            1e-12 * std::max(1.0, std::abs(sol.radial_function[i])));
    }
  }
  SUBCASE("the map preserves the norm in the cylindrical measure") {
    const double dt = p.log_spacing();
    std::vector<double> w(sol.r.size());
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
      const double phi = mapped.solution.radial_function[i];
      w[i] = phi * phi * sol.r[i] * sol.r[i];  // Phi^2 rho drho = Phi^2 rho^2 dt
    }
    CHECK(trapezoid(w, dt) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("zero input maps to zero") {
    auto zero = sol;
    for (auto& v : zero.radial_function) v = 0.0;
    const auto mz = rad::spherical_to_cylindrical_map(zero, p);
    for (double v : mz.solution.radial_function) CHECK(v == 0.0);
  }
}

TEST_CASE("separation check prefers the half-integer azimuthal index") {
  const auto p = harmonic_problem(rad::Geometry::spherical, 0);
  const auto sol = rad::numerov_eigensolve(p, 0);
  const auto mapped = rad::spherical_to_cylindrical_map(sol, p);
  const double res_half = rad::separation_check(mapped, 0, 0.0, p);
  CHECK(res_half < 1e-6);
  const double res_int = rad::separation_check(mapped, 0, 0.0, p, 0.0);
  CHECK(res_int > 100.0 * res_half);
  SUBCASE("k_z enters only through the exact energy shift") {
    CHECK(rad::separation_energy_shift(1.0, kNatural) == doctest::Approx(0.5).epsilon(1e-15));
    const double res_kz = rad::separation_check(mapped, 0, 1.0, p);
    CHECK(res_kz < 1e-6);
  }
}

TEST_CASE("Numerov eigenvalues converge at fourth order") {
  // 1D harmonic oscillator, n = 2 (E = 2.5); coarse grids keep the
  // discretization error well above the bisection floor
  std::vector<double> hs, errs;
  for (std::size_t n_half : {151, 301, 601}) {
    const auto st = rad::numerov_eigensolve_1d(PotentialSpec::harmonic(1.0), 2, 9.0, n_half, kNatural);
    hs.push_back(std::log(9.0 / static_cast<double>(n_half - 1)));
    errs.push_back(std::log(std::abs(st.energy - 2.5)));
  }
  double sxx = 0.0, sxy = 0.0;
  const double mx = (hs[0] + hs[1] + hs[2]) / 3.0, my = (errs[0] + errs[1] + errs[2]) / 3.0;
  for (int i = 0; i < 3; ++i) {
    sxx += (hs[i] - mx) * (hs[i] - mx);
    sxy += (hs[i] - mx) * (errs[i] - my);
  }
  CHECK(sxy / sxx >= 3.9);
}

TEST_CASE("1D mode solves both parities") {
  const auto even = rad::numerov_eigensolve_1d(PotentialSpec::harmonic(1.0), 4, 10.0, 4001, kNatural);
  CHECK(even.energy == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(even.nodes == 4);
  const auto odd = rad::numerov_eigensolve_1d(PotentialSpec::harmonic(1.0), 5, 10.0, 4001, kNatural);
  CHECK(odd.energy == doctest::Approx(5.5).epsilon(1e-10));
  CHECK(odd.nodes == 5);
}

TEST_CASE("minimal dispersion solutions") {
  const auto cyl = rad::minimal_dispersion_solver(1.0, rad::Symmetry::cylindrical, kNatural);
  CHECK(cyl.dLx2 == doctest::Approx(0.5));
  CHECK(cyl.dLy2 == doctest::Approx(0.5));
  CHECK(cyl.dLz2 == doctest::Approx(0.25));
  CHECK(cyl.L2_total == doctest::Approx(2.25));  // (l hbar + hbar/2)^2 at l = 1

  const auto sph = rad::minimal_dispersion_solver(0.0, rad::Symmetry::spherical, kNatural);
  CHECK(sph.dLx2 + sph.dLy2 + sph.dLz2 == doctest::Approx(0.75));

  CHECK_THROWS_AS(rad::minimal_dispersion_solver(0.5, rad::Symmetry::cylindrical, kNatural),
                  std::domain_error);
  CHECK_THROWS_AS(rad::minimal_dispersion_solver(1.0, rad::Symmetry::spherical, kNatural),
                  std::domain_error);

  SUBCASE("complete-the-square identity for l = 0..10") {
    for (int l = 0; l <= 10; ++l) {
      const double lhs = (l * 1.0) * (l * 1.0) + l + 0.25;
      const double rhs = (l + 0.5) * (l + 0.5);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("angular-momentum oracle on |l,m> basis states") {
  const auto r11 = rad::angular_momentum_oracle(1, 1, kNatural);
  CHECK(r11.dLx2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r11.dLy2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r11.dLz2 == doctest::Approx(0.0));
  CHECK(r11.L2_total == doctest::Approx(2.0).epsilon(1e-14));  // hbar^2 l(l+1)
  CHECK(r11.paper_L2 == doctest::Approx(2.25));
  CHECK(r11.paper_L2 - r11.l_l_plus_1_hbar2 == doctest::Approx(0.25).epsilon(1e-14));

  const auto r00 = rad::angular_momentum_oracle(0, 0, kNatural);
  CHECK(r00.dLx2 == 0.0);
  CHECK(r00.dLy2 == 0.0);
  CHECK(r00.dLz2 == 0.0);
  CHECK(r00.L2_total == 0.0);

  CHECK_THROWS_AS(rad::angular_momentum_oracle(1, 2, kNatural), std::domain_error);

  SUBCASE("L^2 equals Lz^2 + the three dispersions on every state") {
    for (int l = 0; l <= 5; ++l)
      for (int m = -l; m <= l; ++m) {
        const auto r = rad::angular_momentum_oracle(l, m, kNatural);
        const double sum = r.Lz_mean * r.Lz_mean + r.dLx2 + r.dLy2 + r.dLz2;
        CHECK(std::abs(r.L2_total - sum) < 1e-12);
      }
  }
  SUBCASE("uncertainty inequality dLx2*dLy2 >= (hbar^2/4) <Lz>^2 on every state") {
    for (int l = 0; l <= 5; ++l)
      for (int m = -l; m <= l; ++m) {
        const auto r = rad::angular_momentum_oracle(l, m, kNatural);
        CHECK(r.dLx2 * r.dLy2 >= 0.25 * r.Lz_mean * r.Lz_mean - 1e-12);
      }
  }
}

TEST_CASE("radial momentum dispersion floor") {
  CHECK(rad::radial_momentum_floor(1.0, kNatural) == doctest::Approx(0.25));
  SUBCASE("homogeneity: scaling <dr^2> by c^2 scales the bound by 1/c^2") {
    const double base = rad::radial_momentum_floor(0.7, kNatural);
    for (double cc : {2.0, 5.0, 0.3}) {
      CHECK(rad::radial_momentum_floor(cc * cc * 0.7, kNatural) ==
            doctest::Approx(base / (cc * cc)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(rad::radial_momentum_floor(0.0, kNatural), std::domain_error);

  SUBCASE("hydrogen 1s: <dr^2> = 3/4, bound 1/3, exceeded by the exact moment") {
    const auto p = hydrogen_problem();
    const auto sol = rad::numerov_eigensolve(p, 0);
    const auto mom = rad::radial_moments(sol, p);
    CHECK(mom.delta_r_sq == doctest::Approx(0.75).epsilon(1e-8));
    const double floor = rad::radial_momentum_floor(mom.delta_r_sq, kNatural);
    CHECK(floor == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(mom.pr2_mean > floor);
    CHECK(mom.pr2_mean == doctest::Approx(1.0).epsilon(1e-4));
  }
}

}  // TEST_SUITE
