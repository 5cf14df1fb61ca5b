// Time-slice evolution oracles:
//   free packet: sigma(t)^2 = sigma0^2 + (hbar t / (2 m sigma0))^2 (analytic);
//   harmonic ground state exp(-x^2/2)/pi^(1/4) is stationary;
//   expanded vs full potential factor differ at O(eps^2) per step;
//   split-operator spectral evolution is the independent cross-check.
#include <doctest.h>

#include <cmath>
#include <complex>

#include "furthlab/kernels.hpp"
#include "furthlab/numerics.hpp"
#include "furthlab/timeslice.hpp"

using namespace furthlab;
namespace tsl = furthlab::timeslice;

namespace {
const PhysicsConstants kNatural{};

Grid1D resolved_grid(double half_width, double eps) {
  Grid1D g = Grid1D::centered(half_width, 2);
  g.n_points = tsl::required_points(g, eps, kNatural) + 1;
  return g;
}

WaveFunction harmonic_ground(const Grid1D& g) {
  WaveFunction psi{g, std::vector<std::complex<double>>(g.n_points)};
  for (std::size_t i = 0; i < g.n_points; ++i)
    psi.values[i] = std::exp(-0.5 * g.point(i) * g.point(i));
  psi.normalize();
  return psi;
}

double max_abs_diff(const WaveFunction& a, const WaveFunction& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    dev = std::max(dev, std::abs(a.values[i] - b.values[i]));
  return dev;
}
}  // namespace

TEST_SUITE("timeslice") {

TEST_CASE("free slice equals the quantum-kernel convolution") {
  const double eps = 0.1;
  const Grid1D g = resolved_grid(12.0, eps);
  const auto psi0 = gaussian_packet(g, 0.0, 1.0);
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = eps;
  ec.n_steps = 1;
  const auto stepped = tsl::short_time_step(psi0, ec, PotentialSpec::free_particle());
  const auto exact = kernels::propagate_wavefunction(psi0, eps, kNatural, 0.0);
  CHECK(max_abs_diff(stepped, exact.wave) < 1e-6);
}

TEST_CASE("normalization shares the kernel branch: 1/A == K(0, eps)") {
  for (double eps : {0.01, 0.1, 1.0}) {
    tsl::EvolutionConfig ec;
    ec.constants = kNatural;
    ec.epsilon = eps;
    const auto inv_a = 1.0 / ec.normalization();
    const auto k0 = kernels::quantum_kernel(0.0, eps, kNatural);
    CHECK(std::abs(inv_a - k0) < 1e-15 * std::abs(k0));
  }
  tsl::EvolutionConfig seven;
  seven.epsilon = 0.01;
  seven.n_steps = 7;
  CHECK(seven.total_time() == doctest::Approx(0.07));
}

TEST_CASE("potential parameter validation") {
  CHECK_THROWS_AS(PotentialSpec::harmonic(0.0).validate(), std::domain_error);
  CHECK_THROWS_AS(PotentialSpec::barrier(1.0, 0.0).validate(), std::domain_error);
  CHECK_THROWS_AS(PotentialSpec::coulomb_regularized(1.0, 0.0).validate(), std::domain_error);
  CHECK(PotentialSpec::coulomb_regularized(1.0, 0.1)(0.0) == doctest::Approx(-10.0));
}

TEST_CASE("zero steps returns the input") {
  const Grid1D g = resolved_grid(8.0, 0.05);
  const auto psi0 = gaussian_packet(g, 0.0, 1.0);
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.05;
  ec.n_steps = 0;
  const auto result = tsl::evolve(psi0, ec, PotentialSpec::free_particle());
  CHECK(result.snapshots.size() == 1);
  CHECK(max_abs_diff(result.snapshots.back(), psi0) == 0.0);
}

TEST_CASE("free Gaussian spreading over T = 1") {
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.05;
  ec.n_steps = 20;
  const Grid1D g = resolved_grid(12.0, ec.epsilon);
  const auto psi0 = gaussian_packet(g, 0.0, 1.0);
  const auto result = tsl::evolve(psi0, ec, PotentialSpec::free_particle());
  CHECK(result.snapshots.back().position_variance() == doctest::Approx(1.25).epsilon(1e-3));
}

TEST_CASE("harmonic ground state is stationary over 100 steps") {
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.01;
  ec.n_steps = 100;
  const Grid1D g = resolved_grid(4.5, ec.epsilon);
  const auto psi0 = harmonic_ground(g);
  const auto result = tsl::evolve(psi0, ec, PotentialSpec::harmonic(1.0));
  double dev = 0.0;
  for (std::size_t i = 0; i < g.n_points; ++i)
    dev = std::max(dev,
                   std::abs(std::abs(result.snapshots.back().values[i]) - std::abs(psi0.values[i])));
  CHECK(dev < 1e-3);
}

TEST_CASE("unitarity: full-mode norm drift per step below 1e-6") {
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.0025;
  ec.n_steps = 10;
  const Grid1D g = resolved_grid(4.25, ec.epsilon);
  const auto psi0 = harmonic_ground(g);
  const auto result = tsl::evolve(psi0, ec, PotentialSpec::harmonic(1.0));
  for (double d : result.norm_drift) CHECK(d < 1e-6);
}

TEST_CASE("chirp-resolution precondition is enforced") {
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.01;
  ec.n_steps = 1;
  const Grid1D coarse = Grid1D::centered(8.0, 200);  // far below required_points
  const auto psi0 = gaussian_packet(coarse, 0.0, 1.0);
  CHECK_THROWS_WITH_AS(tsl::short_time_step(psi0, ec, PotentialSpec::free_particle()),
                       doctest::Contains("chirp unresolved"), std::domain_error);
}

TEST_CASE("expanded-mode precondition suggests a workable eps") {
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.05;
  ec.n_steps = 1;
  ec.mode = tsl::PotentialMode::expanded_first_order;
  const Grid1D g = resolved_grid(8.0, ec.epsilon);  // max U = 32 -> eps limit ~0.003
  const auto psi0 = harmonic_ground(g);
  CHECK_THROWS_WITH_AS(tsl::short_time_step(psi0, ec, PotentialSpec::harmonic(1.0)),
                       doctest::Contains("use eps <"), std::domain_error);
}

TEST_CASE("expanded and full modes differ at second order per step") {
  std::vector<double> epss{0.01, 0.005, 0.0025}, diffs;
  for (double eps : epss) {
    const Grid1D g = resolved_grid(4.0, eps);
    const auto psi0 = harmonic_ground(g);
    tsl::EvolutionConfig ec;
    ec.constants = kNatural;
    ec.epsilon = eps;
    ec.n_steps = 1;
    ec.mode = tsl::PotentialMode::full_exponential;
    const auto full = tsl::short_time_step(psi0, ec, PotentialSpec::harmonic(1.0));
    ec.mode = tsl::PotentialMode::expanded_first_order;
    const auto expanded = tsl::short_time_step(psi0, ec, PotentialSpec::harmonic(1.0));
    std::vector<double> d2(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) d2[i] = std::norm(full.values[i] - expanded.values[i]);
    diffs.push_back(std::sqrt(trapezoid(d2, g.dx())));
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < epss.size(); ++i) {
    lx.push_back(std::log(epss[i]));
    ly.push_back(std::log(diffs[i]));
  }
  CHECK(linear_fit(lx, ly).slope >= 1.9);
}

TEST_CASE("per-step mode difference respects the (eps max|U|/hbar)^2/2 bound") {
  // barrier case: max|U| is the barrier height
  const double eps = 0.01, height = 1.0;
  const Grid1D g = resolved_grid(10.0, eps);
  const auto psi0 = gaussian_packet(g, -5.0, 1.5, 1.0);
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = eps;
  ec.n_steps = 1;
  const auto pot = PotentialSpec::barrier(height, 1.0);
  ec.mode = tsl::PotentialMode::full_exponential;
  const auto full = tsl::short_time_step(psi0, ec, pot);
  ec.mode = tsl::PotentialMode::expanded_first_order;
  const auto expanded = tsl::short_time_step(psi0, ec, pot);
  std::vector<double> d2(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) d2[i] = std::norm(full.values[i] - expanded.values[i]);
  const double diff = std::sqrt(trapezoid(d2, g.dx()));
  CHECK(diff <= 0.5 * (eps * height) * (eps * height));
}

TEST_CASE("spectral reference: identity at T=0 and analytic free spreading") {
  const Grid1D g = Grid1D::centered(16.0, 2048);
  const auto psi0 = gaussian_packet(g, 0.0, 1.0);
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.01;
  ec.n_steps = 0;
  CHECK(max_abs_diff(tsl::spectral_reference_evolve(psi0, ec, PotentialSpec::free_particle()), psi0) ==
        0.0);
  ec.n_steps = 100;
  const auto out = tsl::spectral_reference_evolve(psi0, ec, PotentialSpec::free_particle());
  CHECK(out.position_variance() == doctest::Approx(1.25).epsilon(1e-6));
}

TEST_CASE("evolve agrees with the spectral oracle on the harmonic potential at T = 1") {
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.00625;
  ec.n_steps = 160;  // T = 1
  const Grid1D g = resolved_grid(4.0, ec.epsilon);
  const auto psi0 = harmonic_ground(g);
  const auto pot = PotentialSpec::harmonic(1.0);
  const auto sliced = tsl::evolve(psi0, ec, pot);
  const auto spectral = tsl::spectral_reference_evolve(psi0, ec, pot, 10);
  std::vector<double> d2(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i)
    d2[i] = std::norm(sliced.snapshots.back().values[i] - spectral.values[i]);
  CHECK(std::sqrt(trapezoid(d2, g.dx())) < 1e-3);
}

TEST_CASE("global convergence order against the spectral oracle is >= 0.9") {
  // displacement 0.5 keeps the packet edge amplitude ~4e-5, below the
  // smallest sweep error; larger offsets make the zero-pad/periodic edge
  // mismatch between the two methods flatten the fit
  const double T = 0.2;
  const Grid1D base = resolved_grid(5.0, T / 40.0);  // fine enough for every eps in the sweep
  const auto psi0 = gaussian_packet(base, 0.5, 1.0 / std::sqrt(2.0));
  const auto pot = PotentialSpec::harmonic(1.0);
  std::vector<double> epss, errs;
  for (std::size_t nst : {5, 10, 20, 40}) {
    tsl::EvolutionConfig ec;
    ec.constants = kNatural;
    ec.epsilon = T / static_cast<double>(nst);
    ec.n_steps = nst;
    const auto sliced = tsl::evolve(psi0, ec, pot);
    const auto oracle = tsl::spectral_reference_evolve(psi0, ec, pot, 100 / nst + 4);
    std::vector<double> d2(base.n_points);
    for (std::size_t i = 0; i < base.n_points; ++i)
      d2[i] = std::norm(sliced.snapshots.back().values[i] - oracle.values[i]);
    epss.push_back(std::log(ec.epsilon));
    errs.push_back(std::log(std::sqrt(trapezoid(d2, base.dx()))));
  }
  CHECK(linear_fit(epss, errs).slope >= 0.9);
}

TEST_CASE("barrier transmission matches the spectral oracle within 1e-2") {
  const double k0 = 1.0, energy = 0.5 * k0 * k0, width = 1.0;
  const auto pot = PotentialSpec::barrier(2.0 * energy, width);
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.05;
  ec.n_steps = 100;  // T = 5
  const Grid1D g = resolved_grid(10.0, ec.epsilon);
  const auto psi0 = gaussian_packet(g, -3.5, 1.0, k0);
  const auto sliced = tsl::evolve(psi0, ec, pot);
  const auto oracle = tsl::spectral_reference_evolve(psi0, ec, pot, 8);
  auto transmitted = [&](const WaveFunction& w) {
    std::vector<double> dens(g.n_points, 0.0);
    for (std::size_t i = 0; i < g.n_points; ++i)
      if (g.point(i) > 0.5 * width) dens[i] = std::norm(w.values[i]);
    return trapezoid(dens, g.dx());
  };
  const double t_slice = transmitted(sliced.snapshots.back());
  const double t_oracle = transmitted(oracle);
  CHECK(std::abs(t_slice - t_oracle) < 1e-2);
  CHECK(t_oracle > 0.005);  // something actually tunnels
}

TEST_CASE("schrodinger residual: discretization order and corruption sensitivity") {
  // analytic stationary state sampled at three times: residual is pure
  // discretization, O(dx^2)
  const double E = 0.5, eps = 0.002;
  std::vector<double> hs, rs;
  for (std::size_t n : {401, 801, 1601}) {
    const Grid1D g = Grid1D::centered(8.0, n);
    std::vector<WaveFunction> snaps;
    for (int t = 0; t < 3; ++t) {
      WaveFunction w{g, std::vector<std::complex<double>>(g.n_points)};
      const auto phase = std::polar(1.0, -E * eps * t);
      for (std::size_t i = 0; i < g.n_points; ++i)
        w.values[i] = phase * std::exp(-0.5 * g.point(i) * g.point(i)) / std::pow(M_PI, 0.25);
      snaps.push_back(std::move(w));
    }
    hs.push_back(std::log(g.dx()));
    rs.push_back(std::log(
        tsl::schrodinger_residual(snaps, eps, PotentialSpec::harmonic(1.0), kNatural)));
  }
  const double order = linear_fit(hs, rs).slope;
  CHECK(order == doctest::Approx(2.0).epsilon(0.1));

  SUBCASE("corrupting one amplitude inflates the residual tenfold") {
    const Grid1D g = Grid1D::centered(8.0, 801);
    std::vector<WaveFunction> snaps;
    for (int t = 0; t < 3; ++t) {
      WaveFunction w{g, std::vector<std::complex<double>>(g.n_points)};
      const auto phase = std::polar(1.0, -E * eps * t);
      for (std::size_t i = 0; i < g.n_points; ++i)
        w.values[i] = phase * std::exp(-0.5 * g.point(i) * g.point(i)) / std::pow(M_PI, 0.25);
      snaps.push_back(std::move(w));
    }
    const double base =
        tsl::schrodinger_residual(snaps, eps, PotentialSpec::harmonic(1.0), kNatural);
    snaps[1].values[g.n_points / 2] *= 1.1;
    const double corrupted =
        tsl::schrodinger_residual(snaps, eps, PotentialSpec::harmonic(1.0), kNatural);
    CHECK(corrupted > 10.0 * base);
  }
}

TEST_CASE("grid refinement: halving dx stays within the dx^2 prediction") {
  const double T = 0.2, eps = 0.02;
  const auto pot = PotentialSpec::harmonic(1.0);
  auto observable = [&](std::size_t factor) {
    Grid1D g = resolved_grid(4.0, eps);
    g.n_points = (g.n_points - 1) * factor + 1;
    const auto psi0 = gaussian_packet(g, 1.0, 1.0 / std::sqrt(2.0));
    tsl::EvolutionConfig ec;
    ec.constants = kNatural;
    ec.epsilon = eps;
    ec.n_steps = static_cast<std::size_t>(T / eps);
    return tsl::evolve(psi0, ec, pot).snapshots.back().position_variance();
  };
  const double o1 = observable(1), o2 = observable(2), o4 = observable(4);
  const double fine_pair = std::abs(o2 - o4);     // ~ K (dx/2)^2
  const double coarse_pair = std::abs(o1 - o2);   // ~ K dx^2 * 3/4-ish
  CHECK(coarse_pair < 4.0 * (4.0 * fine_pair) + 1e-12);
}

TEST_CASE("evolve aborts on runaway norm drift") {
  // undamped window truncation at a harsh eta cutoff destroys unitarity
  tsl::EvolutionConfig ec;
  ec.constants = kNatural;
  ec.epsilon = 0.01;
  ec.n_steps = 200;
  ec.eta_half_range = 0.35;  // sharp cutoff inside the packet
  Grid1D g = Grid1D::centered(8.0, 2);
  g.n_points = 4000;  // resolves the chirp over the truncated window
  const auto psi0 = gaussian_packet(g, 0.0, 1.0);
  CHECK_THROWS_WITH_AS(tsl::evolve(psi0, ec, PotentialSpec::free_particle()),
                       doctest::Contains("norm drift"), std::runtime_error);
}

}  // TEST_SUITE
