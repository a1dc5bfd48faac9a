#include "hlnls/fd_oracle.hpp"

#include <cmath>

namespace hlnls {

namespace {

// Thomas elimination for a complex tridiagonal system (lower, diag, upper).
void solve_tridiagonal(const std::vector<complexd>& lower, std::vector<complexd> diag,
                       const std::vector<complexd>& upper, std::vector<complexd>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    complexd m = lower[i - 1] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

complexd power_term(complexd v, double q, double coeff) {
  double a2 = std::norm(v);
  return (a2 > 0.0) ? coeff * std::pow(a2, 0.5 * q) * v : complexd{0.0, 0.0};
}

double trapezoid_mass(const std::vector<complexd>& v, double dx) {
  double m = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    double w = (j == 0 || j + 1 == v.size()) ? 0.5 : 1.0;
    m += w * std::norm(v[j]);
  }
  return m * dx;
}

}  // namespace

CrankNicolsonResult crank_nicolson_solve(const NlsProblem& problem, double dx, double dt,
                                         const CrankNicolsonOptions& opt) {
  problem.validate();
  const Grid1D& grid = problem.u0.grid;
  if (std::abs(dx - grid.dx) > 1e-12 * grid.dx)
    fail(ErrorKind::InvalidInput, "crank_nicolson_solve: dx must match the data grid");
  if (!(dt > 0.0) || dt > dx)
    fail(ErrorKind::InvalidInput, "crank_nicolson_solve: requires 0 < dt <= dx");
  const std::size_t n = grid.n;
  const auto nsteps = static_cast<std::size_t>(std::llround(problem.T / dt));
  if (std::abs(static_cast<double>(nsteps) * dt - problem.T) > 1e-9 * std::max(1.0, problem.T))
    fail(ErrorKind::InvalidInput, "crank_nicolson_solve: T must be a multiple of dt");

  // Constant tridiagonal part of (2i/dt) I + D2 with ghost-point ends.
  const double idx2 = 1.0 / (dx * dx);
  const complexd alpha{0.0, 2.0 / dt};
  std::vector<complexd> lower(n - 1, complexd(idx2, 0.0));
  std::vector<complexd> upper(n - 1, complexd(idx2, 0.0));
  std::vector<complexd> diag(n, alpha - 2.0 * idx2);
  upper[0] = 2.0 * idx2;      // ghost at x = 0
  lower[n - 2] = 2.0 * idx2;  // homogeneous Neumann ghost at x = L

  CrankNicolsonResult result;
  result.slab.times.reserve(nsteps + 1);
  result.slab.slices.reserve(nsteps + 1);
  std::vector<complexd> u = problem.u0.values;
  result.slab.times.push_back(0.0);
  result.slab.slices.emplace_back(grid, u);
  const double mass0 = std::max(trapezoid_mass(u, dx), 1e-300);
  result.mass_history.push_back(mass0);
  bool decay_warned = false;

  auto boundary_h = [&](double t) -> complexd {
    if (problem.mode == BoundaryMode::ClosedLoop) return {0.0, 0.0};  // folded below
    double pos = std::clamp(t / problem.h.dt, 0.0, static_cast<double>(problem.h.size() - 1));
    auto i0 = std::min(static_cast<std::size_t>(pos), problem.h.size() - 2);
    double w = pos - static_cast<double>(i0);
    return (1.0 - w) * problem.h.values[i0] + w * problem.h.values[i0 + 1];
  };

  std::vector<complexd> mid(n), rhs(n);
  for (std::size_t step = 0; step < nsteps; ++step) {
    const double t_mid = (static_cast<double>(step) + 0.5) * dt;
    mid = u;
    double change = 1.0;
    std::size_t inner = 0;
    while (change > opt.inner_tol) {
      if (++inner > opt.max_inner)
        fail(ErrorKind::Step, "crank_nicolson_solve: inner iteration did not converge");
      for (std::size_t j = 0; j < n; ++j)
        rhs[j] = alpha * u[j] - power_term(mid[j], problem.p, problem.k);
      // Robin / Neumann flux through the ghost point, evaluated at midpoint.
      complexd flux = problem.mode == BoundaryMode::ClosedLoop
                          ? power_term(mid[0], problem.r, -problem.lambda)
                          : boundary_h(t_mid);
      rhs[0] += (2.0 / dx) * flux;
      std::vector<complexd> next = rhs;
      solve_tridiagonal(lower, diag, upper, next);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        num += std::norm(next[j] - mid[j]);
        den += std::norm(next[j]);
      }
      change = std::sqrt(num / std::max(den, 1e-300));
      mid.swap(next);
    }
    for (std::size_t j = 0; j < n; ++j) u[j] = 2.0 * mid[j] - u[j];

    double mass = trapezoid_mass(u, dx);
    result.mass_history.push_back(mass);
    if (std::abs(mass - mass0) > opt.mass_drift_tol * mass0)
      fail(ErrorKind::Stability, "crank_nicolson_solve: mass drift beyond tolerance");
    if (!decay_warned && std::abs(u[n - 1]) > opt.decay_monitor) {
      result.warnings.push_back("truncation: |u(L, t)| exceeded the decay monitor");
      decay_warned = true;
    }
    result.slab.times.push_back(static_cast<double>(step + 1) * dt);
    result.slab.slices.emplace_back(grid, u);
  }
  result.slab.validate();
  return result;
}

}  // namespace hlnls
