#include "furthlab/numerov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace furthlab::numerov {

namespace {

struct Sweep {
  std::vector<double> u;
  int nodes = 0;
};

// Outward Numerov march with overflow rescaling. Sign changes are counted
// only where h^2 f/12 < 1/2; beyond that the recursion roots turn negative
// and the alternation is a discretization artifact, not a node.
Sweep sweep_out(const std::vector<double>& f, double h, double u0, double u1,
                std::size_t upto) {
  Sweep s;
  s.u.assign(upto, 0.0);
  s.u[0] = u0;
  s.u[1] = u1;
  const double c = h * h / 12.0;
  for (std::size_t i = 1; i + 1 < upto; ++i) {
    s.u[i + 1] = ((2.0 + 10.0 * c * f[i]) * s.u[i] - (1.0 - c * f[i - 1]) * s.u[i - 1]) /
                 (1.0 - c * f[i + 1]);
    if (s.u[i + 1] * s.u[i] < 0.0 && c * f[i] < 0.5 && c * f[i + 1] < 0.5) ++s.nodes;
    if (std::abs(s.u[i + 1]) > 1e250) {
      for (std::size_t j = 0; j <= i + 1; ++j) s.u[j] /= 1e250;
    }
  }
  return s;
}

std::vector<double> sweep_in(const std::vector<double>& f, double h, std::size_t down_to) {
  const std::size_t n = f.size();
  std::vector<double> u(n, 0.0);
  u[n - 1] = 0.0;
  u[n - 2] = 1e-250;
  const double c = h * h / 12.0;
  for (std::size_t i = n - 2; i > down_to; --i) {
    u[i - 1] = ((2.0 + 10.0 * c * f[i]) * u[i] - (1.0 - c * f[i + 1]) * u[i + 1]) /
               (1.0 - c * f[i - 1]);
    if (std::abs(u[i - 1]) > 1e250) {
      for (std::size_t j = i - 1; j < n; ++j) u[j] /= 1e250;
    }
  }
  return u;
}

}  // namespace

int sweep_node_count(const Problem& problem, double E) {
  const std::size_t n = problem.x.size();
  const double h = problem.x[1] - problem.x[0];
  std::vector<double> f(n);
  problem.coefficient(E, f);
  const auto [u0, u1] = problem.left_start(E);
  return sweep_out(f, h, u0, u1, n).nodes;
}

Eigenpair solve(const Problem& problem, int target_nodes, double e_lo, double e_hi,
                double energy_tol) {
  if (problem.x.size() < 8) throw std::invalid_argument("numerov::solve: grid too small");
  const std::size_t n = problem.x.size();
  const double h = problem.x[1] - problem.x[0];

  const int n_lo = sweep_node_count(problem, e_lo);
  const int n_hi = sweep_node_count(problem, e_hi);
  if (!(n_lo <= target_nodes && target_nodes < n_hi)) {
    throw std::runtime_error(
        "numerov::solve: no bracket for " + std::to_string(target_nodes) +
        " nodes in window [" + std::to_string(e_lo) + ", " + std::to_string(e_hi) +
        "] (node counts " + std::to_string(n_lo) + ".." + std::to_string(n_hi) + ")");
  }

  // Sturm bisection: the outward node count jumps by one exactly at each
  // discrete Dirichlet eigenvalue.
  double lo = e_lo, hi = e_hi;
  int iterations = 0;
  for (; iterations < 400; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (sweep_node_count(problem, mid) >= target_nodes + 1) hi = mid;
    else lo = mid;
    if (hi - lo <= energy_tol * std::max(1.0, std::abs(mid))) break;
  }
  Eigenpair out;
  out.energy = 0.5 * (lo + hi);
  out.bisection_iterations = iterations;

  // Assemble the eigenfunction from two sweeps joined at the outermost sign
  // change of f (outer turning point).
  std::vector<double> f(n);
  problem.coefficient(out.energy, f);
  std::size_t match = n / 2;
  for (std::size_t i = n - 1; i > 0; --i) {
    if (f[i - 1] <= 0.0 && f[i] > 0.0) { match = i; break; }
  }
  match = std::min(std::max<std::size_t>(match, 2), n - 3);

  const auto [u0, u1] = problem.left_start(out.energy);
  const Sweep outward = sweep_out(f, h, u0, u1, match + 2);
  const auto inward = sweep_in(f, h, match >= 2 ? match - 2 : 0);
  if (outward.u[match] == 0.0 || inward[match] == 0.0)
    throw std::runtime_error("numerov::solve: vanishing value at matching point");

  out.u.assign(n, 0.0);
  const double so = 1.0 / outward.u[match];
  for (std::size_t i = 0; i <= match; ++i) out.u[i] = outward.u[i] * so;
  const double si = 1.0 / inward[match];
  for (std::size_t i = match; i < n; ++i) out.u[i] = inward[i] * si;

  double umax = 0.0;
  for (double v : out.u) umax = std::max(umax, std::abs(v));
  for (double& v : out.u) v /= umax;

  out.nodes = 0;
  const double c = h * h / 12.0;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (out.u[i] * out.u[i + 1] < 0.0 && c * f[i] < 0.5 && c * f[i + 1] < 0.5) ++out.nodes;

  // Numerov 3-term defect, scaled back to u'' - f u units.
  double defect = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double p_prev = (1.0 - c * f[i - 1]) * out.u[i - 1];
    const double p_next = (1.0 - c * f[i + 1]) * out.u[i + 1];
    const double rhs = (2.0 + 10.0 * c * f[i]) * out.u[i];
    defect = std::max(defect, std::abs(p_next + p_prev - rhs));
  }
  out.ode_residual = defect / (h * h);
  return out;
}

}  // namespace furthlab::numerov
