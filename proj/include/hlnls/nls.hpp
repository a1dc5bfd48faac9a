#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hlnls/boundary_propagator.hpp"
#include "hlnls/grid.hpp"

namespace hlnls {

enum class BoundaryMode { OpenLoop, ClosedLoop };

/// Problem description for i u_t + u_xx + k |u|^p u = 0 on the half-line with
/// either prescribed Neumann data h(t) (open loop) or the nonlinear boundary
/// condition u_x(0,t) = -lambda |u(0,t)|^r u(0,t) (closed loop).
struct NlsProblem {
  SobolevIndex s{2.0};
  double p = 2.0;
  double r = 2.0;
  double k = 1.0;
  double lambda = 1.0;
  double T = 0.1;
  GridFunction u0;  // initial data on [0, L]
  BoundaryMode mode = BoundaryMode::ClosedLoop;
  TimeTrace h;        // open-loop boundary data on [0, T]
  bool strict = false;

  /// Checks the regularity window, the theorem's exponent assumptions
  /// (warnings unless strict) and the compatibility condition for s > 3/2
  /// (always enforced). Returns the warnings it raised.
  std::vector<std::string> validate(double ctol = 1e-6) const;
};

struct SolverOptions {
  double dt = 1e-3;
  double fixed_point_tol = 1e-10;
  std::size_t max_iterations = 50;
  double blowup_cap = 1e6;         // times the initial H^s norm
  double t0_min_factor = 16384.0;  // t0_min = T / factor
  double ctol = 1e-6;
  double decay_tol = 1e-5;  // right-edge decay gate for slice extensions
  BoundaryFieldOptions boundary;
  enum class InitialIterate { FreeEvolution, Zero };
  InitialIterate initial_iterate = InitialIterate::FreeEvolution;
};

struct SolveDiagnostics {
  double A = 0.0;   // measured data size ||u0|| (+ (1+T)||h|| open loop)
  double R = 0.0;   // contraction ball radius 2A
  double T0 = 0.0;  // solved lifespan
  std::size_t iterations = 0;
  std::vector<double> contraction_ratios;
  std::vector<double> residual_history;  // X-norm of successive differences
  std::vector<double> hs_norm_history;   // H^s(R_+) per time
  std::vector<double> mass_history;      // L2(R_+)^2 per time
  double xts_norm = 0.0;
  double fixed_point_residual = 0.0;  // ||Psi(u) - u||_X / ||u||_X
  std::vector<std::string> warnings;
};

struct SolutionField {
  TimeSlab slab;             // half-line field on [0, T0]
  TimeTrace boundary_trace;  // u(0, .)
  SolveDiagnostics diagnostics;
};

enum class ContinuationStatus { Completed, BlowupDetected };

struct ContinuationResult {
  ContinuationStatus status = ContinuationStatus::Completed;
  double t_reached = 0.0;
  std::vector<SolutionField> fields;
  double final_norm = 0.0;
  std::vector<double> time_history;  // global times of the norm history
  std::vector<double> norm_history;  // H^s(R_+) along the continuation
};

/// f(u) = k |u|^p u, pointwise; |0|^p 0 = 0 for every p > 0.
GridFunction nonlinearity(const GridFunction& u, double p, double k);

/// h(v) = -lambda |v|^r v applied to a boundary trace.
TimeTrace boundary_feedback(const TimeTrace& trace, double r, double lambda);

/// |u0'(0) + lambda |u0(0)|^r u0(0)| (closed loop) or |u0'(0) - h(0)| (open
/// loop); 0 when s <= 3/2 where the derivative trace is not used.
double check_compatibility(const NlsProblem& problem);

/// One application of the solution map: free evolution of the extended data,
/// minus i times the Duhamel term of f(u*), plus the boundary correction
/// W_b([h - g - p]_e); g and p enter only for s > 3/2.
TimeSlab apply_Psi(const TimeSlab& candidate, const NlsProblem& problem, double T0,
                   const SolverOptions& opt = {});

/// sup_t H^s(R_+) + sup_x H^{(2s+1)/4}(0,T) over the slab's sample sets.
double xts_norm(const TimeSlab& halfline_slab, SobolevIndex s);

/// Picard iteration of Psi on [0, T0] from the free-evolution (or zero)
/// initial iterate; throws a no-contraction error after three consecutive
/// non-decreasing residuals.
SolutionField picard_solve(const NlsProblem& problem, double T0, const SolverOptions& opt = {});

/// Largest dyadic T0 = T / 2^m on which the monitored contraction succeeds
/// (halving from T); throws a lifespan error below T / t0_min_factor.
/// Returns the selected T0 together with the converged field.
std::pair<double, SolutionField> select_T0(const NlsProblem& problem,
                                           const SolverOptions& opt = {});

/// Repeated local solves restarting from each endpoint; stops at the horizon
/// or declares blow-up when the norm escapes blowup_cap or the lifespan
/// selection collapses.
ContinuationResult continue_solution(const NlsProblem& problem, const SolverOptions& opt = {});

/// Solves the base problem and perturbations u0 + delta * bump (fixed smooth
/// compatibility-neutral bump) on a common T0; returns
/// ||u - v||_{X_{T0}^s} / ||u0 - v0||_{H^s(R_+)} per delta (0 for delta = 0).
std::vector<double> lipschitz_probe(const NlsProblem& problem, const std::vector<double>& deltas,
                                    const SolverOptions& opt = {});

}  // namespace hlnls
