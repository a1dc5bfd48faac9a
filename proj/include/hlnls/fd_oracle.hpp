#pragma once

#include "hlnls/nls.hpp"

namespace hlnls {

struct CrankNicolsonOptions {
  double inner_tol = 1e-12;
  std::size_t max_inner = 60;
  double mass_drift_tol = 1e-2;  // relative drift that aborts the march
  double decay_monitor = 1e-6;   // |u(L, t)| level that raises a warning
};

struct CrankNicolsonResult {
  TimeSlab slab;
  std::vector<double> mass_history;
  std::vector<std::string> warnings;
};

/// Independent finite-difference solve of the problem on [0, T]: midpoint
/// Crank-Nicolson in time, centered second differences in space, the Robin
/// condition through a ghost point at x = 0 and homogeneous Neumann at x = L.
/// Nonlinear terms are resolved by fixed-point inner iteration per step;
/// the linear solves are tridiagonal eliminations.
CrankNicolsonResult crank_nicolson_solve(const NlsProblem& problem, double dx, double dt,
                                         const CrankNicolsonOptions& opt = {});

}  // namespace hlnls
