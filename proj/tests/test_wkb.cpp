// WKB oracles: harmonic closed forms p = sqrt(2(E - x^2/2)),
// action over the full allowed interval = pi E, WKB-vs-Numerov comparison,
// and the decomposition E = <p>^2/2m + <(dp)^2>/2m + <U>.
#include <doctest.h>

#include <cmath>
#include <complex>

#include "furthlab/radial.hpp"
#include "furthlab/wkb.hpp"

using namespace furthlab;
namespace rad = furthlab::radial;

namespace {
const PhysicsConstants kNatural{};
const PotentialSpec kHarmonic = PotentialSpec::harmonic(1.0);
}  // namespace

TEST_SUITE("wkb") {

TEST_CASE("local momentum on the harmonic potential") {
  const auto p0 = wkb::local_momentum(0.5, kHarmonic, 0.0, kNatural);
  CHECK(p0.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p0.regime == wkb::Regime::allowed);

  const auto pt = wkb::local_momentum(0.5, kHarmonic, 1.0, kNatural);
  CHECK(pt.value == doctest::Approx(0.0));
  CHECK(pt.regime == wkb::Regime::allowed);  // side convention at U == E

  const auto pf = wkb::local_momentum(0.5, kHarmonic, 2.0, kNatural);
  CHECK(pf.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(pf.regime == wkb::Regime::forbidden);
}

TEST_CASE("turning points of the harmonic well") {
  const auto tp = wkb::find_turning_points(0.5, kHarmonic, -3.0, 3.0, kNatural);
  REQUIRE(tp.points.size() == 2);
  CHECK(tp.points[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(tp.points[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("action integral over the full allowed interval equals pi E") {
  const auto act = wkb::action_integrals(0.5, kHarmonic, -1.0, 1.0, 2048, kNatural);
  CHECK(act.s_real == doctest::Approx(M_PI * 0.5).epsilon(1e-9));
  SUBCASE("zero-length interval") {
    CHECK(wkb::action_integrals(0.5, kHarmonic, 0.3, 0.3, 64, kNatural).s_real == 0.0);
  }
  SUBCASE("forbidden tail action is positive and monotone in the upper limit") {
    const double s13 = wkb::action_integrals(0.5, kHarmonic, 1.0, 3.0, 2048, kNatural).s_real;
    const double s12 = wkb::action_integrals(0.5, kHarmonic, 1.0, 2.0, 2048, kNatural).s_real;
    CHECK(s12 > 0.0);
    CHECK(s13 > s12);
  }
  SUBCASE("interval straddling a turning point is rejected") {
    CHECK_THROWS_AS(wkb::action_integrals(0.5, kHarmonic, 0.0, 2.0, 256, kNatural),
                    std::domain_error);
  }
}

TEST_CASE("amplitude factor identity exp(-ln(p)/2) == 1/sqrt(p)") {
  const auto act = wkb::action_integrals(10.5, kHarmonic, -4.0, 4.0, 257, kNatural);
  for (std::size_t i = 0; i < act.sample_x.size(); ++i) {
    const double p = wkb::local_momentum(10.5, kHarmonic, act.sample_x[i], kNatural).value;
    CHECK(std::abs(std::exp(-act.amplitude_log[i]) - 1.0 / std::sqrt(p)) < 1e-12);
  }
}

TEST_CASE("flat potential with c2 = 0 reduces to a plane wave over sqrt(p)") {
  const double E = 2.0;  // p = 2 everywhere
  const Grid1D g = Grid1D::centered(5.0, 501);
  wkb::WkbMatching m;
  m.c1 = {1.0, 0.0};
  m.c2 = {0.0, 0.0};
  const auto w = wkb::wkb_wavefunction(E, PotentialSpec::free_particle(), g, m, kNatural);
  const double p = std::sqrt(2.0 * E);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double s = p * (g.point(i) - g.x_min);
    const auto expected = std::polar(1.0 / std::sqrt(p), s);
    CHECK(std::abs(w.wave.values[i] - expected) < 1e-9);
  }
}

TEST_CASE("forbidden-branch log-derivative equals -|p|/hbar - |p|'/(2|p|)") {
  const double E = 0.5;
  wkb::WkbMatching m;
  m.c_forbidden_right = {1.0, 0.0};
  m.c_forbidden_left = {1.0, 0.0};
  // grid entirely right of the turning point at x = 1: single-crossing layout
  const auto w = wkb::wkb_wavefunction(E, kHarmonic, Grid1D::centered(2.3, 4601), m, kNatural);
  const auto& gg = w.wave.grid;
  const double h = gg.dx();
  for (std::size_t i = 1; i + 1 < gg.n_points; ++i) {
    const double x = gg.point(i);
    if (x < 1.35 || x > 2.2) continue;  // forbidden region, away from the guard band
    const double re_m = w.wave.values[i - 1].real();
    const double re_0 = w.wave.values[i].real();
    const double re_p = w.wave.values[i + 1].real();
    const double logderiv = (re_p - re_m) / (2.0 * h * re_0);
    const double p = std::sqrt(2.0 * (0.5 * x * x - E));
    const double dp = x / p;  // d|p|/dx for the harmonic potential
    const double expected = -p - dp / (2.0 * p);
    CHECK(std::abs(logderiv - expected) < 1e-5 * std::abs(expected) + 1e-6);
  }
}

TEST_CASE("harmonic n=10: WKB matches Numerov outside the guard bands") {
  const auto exact = rad::numerov_eigensolve_1d(kHarmonic, 10, 12.0, 12001, kNatural);
  CHECK(exact.energy == doctest::Approx(10.5).epsilon(1e-10));
  const auto w = wkb::wkb_wavefunction(exact.energy, kHarmonic, exact.grid,
                                       wkb::WkbMatching::cosine_form(), kNatural, 0.10);
  const double a = w.turning_points.points.front();
  const double b = w.turning_points.points.back();
  std::vector<double> num, app;
  for (std::size_t i = 0; i < exact.grid.n_points; ++i) {
    const double x = exact.grid.point(i);
    if (x <= a || x >= b || w.mask[i]) continue;
    num.push_back(exact.values[i]);
    app.push_back(w.wave.values[i].real());
  }
  double nn = 0.0, na = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    nn += num[i] * num[i];
    na += app[i] * app[i];
    dot += num[i] * app[i];
  }
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  double err2 = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double d = num[i] / std::sqrt(nn) - sign * app[i] / std::sqrt(na);
    err2 += d * d;
  }
  CHECK(std::sqrt(err2) < 0.02);
}

TEST_CASE("allowed-region density averages to the classical density") {
  // period-normalized WKB amplitude (A^2 = 4m/T), windows of one density
  // oscillation Delta S = pi hbar, n = 20, |x| <= 0.6 a
  const double E = 20.5;
  const double a = std::sqrt(2.0 * E);
  const double T = 2.0 * M_PI;
  for (double frac = -0.6; frac <= 0.6001; frac += 0.1) {
    const double xc = frac * a;
    const auto act = wkb::action_integrals(E, kHarmonic, -a * 0.9999, xc, 4096, kNatural);
    const double p_c = wkb::local_momentum(E, kHarmonic, xc, kNatural).value;
    // integrate the density over one oscillation around xc by fine sampling
    const double half_window = 0.5 * M_PI / p_c;  // dx ~ dS/p
    const std::size_t m = 4001;
    double acc = 0.0;
    const double lo = xc - half_window, hi = xc + half_window;
    double prev_x = lo, prev_p = wkb::local_momentum(E, kHarmonic, lo, kNatural).value;
    double s = 0.0;
    std::vector<double> dens(m);
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
      const double p = wkb::local_momentum(E, kHarmonic, x, kNatural).value;
      s += 0.5 * (p + prev_p) * (x - prev_x);
      prev_x = x;
      prev_p = p;
      const auto act0 = act.s_real + s;  // S measured from the left turning point
      const double amp2 = 4.0 / T / p;   // (A^2 / p), A^2 = 4 m / T
      dens[i] = amp2 * std::cos(act0 - M_PI / 4.0) * std::cos(act0 - M_PI / 4.0);
      xs[i] = x;
    }
    for (std::size_t i = 0; i + 1 < m; ++i) acc += 0.5 * (dens[i] + dens[i + 1]) * (xs[i + 1] - xs[i]);
    const double avg = acc / (hi - lo);
    const double rho_cl = 1.0 / (M_PI * p_c);
    CHECK(avg / rho_cl == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("energy decomposition on the analytic harmonic ground state") {
  const Grid1D g = Grid1D::centered(10.0, 2048);
  WaveFunction psi{g, std::vector<std::complex<double>>(g.n_points)};
  for (std::size_t i = 0; i < g.n_points; ++i)
    psi.values[i] = std::exp(-0.5 * g.point(i) * g.point(i)) / std::pow(M_PI, 0.25);
  psi.normalize();
  const auto dec = wkb::energy_decomposition_check(psi, 0.5, kHarmonic, kNatural);
  CHECK(std::abs(dec.p_mean) < 1e-10);  // real state carries no current
  CHECK(dec.dp2 / 2.0 == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(dec.potential_mean == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(dec.residual < 1e-8);
}

TEST_CASE("energy decomposition residual on Numerov eigenstates") {
  for (int n : {0, 3}) {
    const auto st = rad::numerov_eigensolve_1d(kHarmonic, n, 12.0, 12001, kNatural);
    WaveFunction psi{st.grid, std::vector<std::complex<double>>(st.grid.n_points)};
    for (std::size_t i = 0; i < st.values.size(); ++i) psi.values[i] = st.values[i];
    const auto dec = wkb::energy_decomposition_check(psi, st.energy, kHarmonic, kNatural);
    CHECK(std::abs(dec.p_mean) < 1e-10);
    CHECK(dec.residual < 1e-8);
  }
}

TEST_CASE("WKB relative error decreases with quantum number") {
  auto l2err = [&](int n) {
    const auto exact = rad::numerov_eigensolve_1d(kHarmonic, n, 12.0, 12001, kNatural);
    const auto w = wkb::wkb_wavefunction(exact.energy, kHarmonic, exact.grid,
                                         wkb::WkbMatching::cosine_form(), kNatural, 0.10);
    const double a = w.turning_points.points.front();
    const double b = w.turning_points.points.back();
    std::vector<double> num, app;
    for (std::size_t i = 0; i < exact.grid.n_points; ++i) {
      const double x = exact.grid.point(i);
      if (x <= a || x >= b || w.mask[i]) continue;
      num.push_back(exact.values[i]);
      app.push_back(w.wave.values[i].real());
    }
    double nn = 0.0, na = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
      nn += num[i] * num[i];
      na += app[i] * app[i];
      dot += num[i] * app[i];
    }
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    double err2 = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
      const double d = num[i] / std::sqrt(nn) - sign * app[i] / std::sqrt(na);
      err2 += d * d;
    }
    return std::sqrt(err2);
  };
  CHECK(l2err(20) < l2err(5));
}

}  // TEST_SUITE
