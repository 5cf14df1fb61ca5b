#pragma once

#include <functional>
#include <vector>

namespace furthlab::numerov {

/// Two-sided Numerov shooting for u'' = f(x) u on a uniform grid.
///
/// The energy is located by Sturm bisection on the outward sweep's node count
/// (the count jumps by one exactly at each discrete Dirichlet eigenvalue);
/// the eigenfunction is then assembled from outward and inward sweeps joined
/// at the outermost sign change of f (outer turning point). Sign changes are
/// only counted where h^2 f / 12 < 1/2 — beyond that the discrete recursion
/// alternates sign without physical meaning.
struct Problem {
  std::vector<double> x;  // uniform
  /// Fills f_i(E).
  std::function<void(double, std::vector<double>&)> coefficient;
  /// First two outward values (u_0, u_1) for a given E.
  std::function<std::pair<double, double>(double)> left_start;
};

struct Eigenpair {
  double energy = 0.0;
  std::vector<double> u;      // assembled, max-normalized
  int nodes = 0;
  double ode_residual = 0.0;  // max Numerov 3-term defect / max|u|
  int bisection_iterations = 0;
};

/// Count of resolved sign changes of the outward solution for energy E.
int sweep_node_count(const Problem& problem, double E);

/// Finds the eigenpair with `target_nodes` interior nodes inside [e_lo, e_hi].
/// Throws std::runtime_error with the window report when the bracket fails.
Eigenpair solve(const Problem& problem, int target_nodes, double e_lo, double e_hi,
                double energy_tol = 1e-12);

}  // namespace furthlab::numerov
