#include "hlnls/nls.hpp"

#include <algorithm>
#include <cmath>

#include "hlnls/line_propagator.hpp"
#include "hlnls/sobolev.hpp"

namespace hlnls {

namespace {

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }
bool is_odd_integer(double x) {
  return is_integer(x) && (static_cast<long long>(std::llround(x)) % 2 != 0);
}

}  // namespace

std::vector<std::string> NlsProblem::validate(double ctol) const {
  std::vector<std::string> warnings;
  if (!s.valid_solution_regularity())
    fail(ErrorKind::InvalidInput, "NlsProblem: s must lie in (1/2, 7/2) \\ {3/2}");
  if (!(p > 0.0) || !(r > 0.0)) fail(ErrorKind::InvalidInput, "NlsProblem: p, r must be positive");
  if (!(T > 0.0)) fail(ErrorKind::InvalidInput, "NlsProblem: T must be positive");
  if (std::abs(u0.grid.x_min) > 1e-12)
    fail(ErrorKind::InvalidInput, "NlsProblem: u0 must live on [0, L]");
  if (mode == BoundaryMode::OpenLoop &&
      (h.size() < 2 || std::abs(h.t_max - T) > 1e-9 * std::max(1.0, T)))
    fail(ErrorKind::InvalidInput, "NlsProblem: open-loop data must live on [0, T]");

  auto warn = [&](const std::string& msg) {
    if (strict) fail(ErrorKind::InvalidInput, "strict mode: " + msg);
    warnings.push_back(msg);
  };

  if (k == 0.0) warn("k = 0 is outside the theorem's assumptions (linear main equation)");
  if (lambda == 0.0 && mode == BoundaryMode::ClosedLoop)
    warn("lambda = 0 reduces the boundary condition to homogeneous Neumann");

  // (A1)/(A2) on p unless p is an even integer.
  if (!(is_integer(p) && !is_odd_integer(p))) {
    if (is_integer(s.s)) {
      if (is_odd_integer(p) && !(p >= s.s)) warn("(A1): odd integer p must satisfy p >= s");
      if (!is_integer(p) && !(std::floor(p) >= s.s - 1.0))
        warn("(A1): non-integer p must satisfy [p] >= s - 1");
    } else {
      if (is_odd_integer(p) && !(p > s.s)) warn("(A2): odd integer p must satisfy p > s");
      if (!is_integer(p) && !(std::floor(p) >= std::floor(s.s)))
        warn("(A2): non-integer p must satisfy [p] >= [s]");
    }
  }
  // (A3) on r unless r is an even integer.
  if (mode == BoundaryMode::ClosedLoop && !(is_integer(r) && !is_odd_integer(r))) {
    double sigma = (2.0 * s.s - 1.0) / 4.0;
    if (is_odd_integer(r) && !(r > sigma)) warn("(A3): odd integer r must satisfy r > (2s-1)/4");
    if (!is_integer(r) && !(std::floor(r) >= std::floor(sigma)))
      warn("(A3): non-integer r must satisfy [r] >= [(2s-1)/4]");
  }

  if (s.s > 1.5) {
    double res = check_compatibility(*this);
    double scale = std::max(u0.max_abs(), 1e-300);
    if (res > ctol * std::max(1.0, scale))
      fail(ErrorKind::Compatibility,
           "NlsProblem: compatibility residual " + std::to_string(res) + " exceeds tolerance");
  }
  return warnings;
}

GridFunction nonlinearity(const GridFunction& u, double p, double k) {
  if (!(p > 0.0)) fail(ErrorKind::InvalidInput, "nonlinearity: p must be positive");
  std::vector<complexd> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    double a2 = std::norm(u.values[j]);
    v[j] = (a2 > 0.0) ? k * std::pow(a2, 0.5 * p) * u.values[j] : complexd{0.0, 0.0};
  }
  return GridFunction(u.grid, std::move(v));
}

TimeTrace boundary_feedback(const TimeTrace& trace, double r, double lambda) {
  if (!(r > 0.0)) fail(ErrorKind::InvalidInput, "boundary_feedback: r must be positive");
  std::vector<complexd> v(trace.size());
  for (std::size_t j = 0; j < trace.size(); ++j) {
    double a2 = std::norm(trace.values[j]);
    v[j] = (a2 > 0.0) ? -lambda * std::pow(a2, 0.5 * r) * trace.values[j] : complexd{0.0, 0.0};
  }
  return TimeTrace(trace.t_min, trace.t_max, std::move(v));
}

double check_compatibility(const NlsProblem& problem) {
  if (problem.s.s <= 1.5) return 0.0;
  complexd d1 = one_sided_derivative(problem.u0.values, problem.u0.grid.dx, 1);
  complexd v0 = problem.u0.values[0];
  if (problem.mode == BoundaryMode::ClosedLoop) {
    double a2 = std::norm(v0);
    complexd bc = (a2 > 0.0) ? -problem.lambda * std::pow(a2, 0.5 * problem.r) * v0
                             : complexd{0.0, 0.0};
    return std::abs(d1 - bc);
  }
  return std::abs(d1 - problem.h.values.front());
}

namespace {

struct PsiContext {
  const NlsProblem* prob = nullptr;
  SolverOptions opt;
  double T0 = 0.0;
  std::vector<double> times;
  Grid1D half;
  std::vector<GridFunction> free_term;  // W(t) u0* restricted to [0, L]
  TimeTrace g_trace;                    // d/dx W(t) u0* at 0 (s > 3/2), else zeros
  bool use_traces = false;

  PsiContext(const NlsProblem& problem, double T0_, const SolverOptions& o)
      : prob(&problem), opt(o), T0(T0_), half(problem.u0.grid) {
    std::size_t nt = static_cast<std::size_t>(std::llround(T0 / opt.dt)) + 1;
    if (std::abs((static_cast<double>(nt - 1)) * opt.dt - T0) > 1e-9 * std::max(1.0, T0))
      fail(ErrorKind::Domain, "apply_Psi: T0 must be a multiple of dt");
    if (nt < 9) fail(ErrorKind::Domain, "apply_Psi: fewer than 9 time samples on [0, T0]");
    times.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) times[i] = opt.dt * static_cast<double>(i);

    use_traces = problem.s.s > 1.5;
    GridFunction u0_star = extend_initial_data(problem.u0, problem.s, opt.decay_tol);
    LineSpectrum sp = analyze(u0_star);
    free_term.reserve(nt);
    const std::size_t offset = half_offset(u0_star.grid);
    for (double t : times) {
      LineSpectrum st = sp;
      st.apply_multiplier([t](double b) { return std::polar(1.0, -b * b * t); });
      free_term.push_back(restrict_to_half(synthesize(st), offset));
    }
    if (use_traces)
      g_trace = neumann_trace_free(u0_star, times);
    else
      g_trace = TimeTrace::zero(0.0, T0, nt);
  }

  std::size_t half_offset(const Grid1D& ext) const { return ext.index_of(half.x_min); }

  GridFunction restrict_to_half(const GridFunction& ext, std::size_t offset) const {
    std::vector<complexd> v(ext.values.begin() + static_cast<long>(offset),
                            ext.values.begin() + static_cast<long>(offset + half.n));
    return GridFunction(half, std::move(v));
  }

  TimeSlab run(const TimeSlab& candidate) const {
    const auto& problem = *prob;
    const std::size_t nt = times.size();
    if (candidate.nt() != nt || !candidate.grid().same_as(half))
      fail(ErrorKind::InvalidInput, "apply_Psi: candidate slab does not match the context");

    // Forcing slab f(u*) on the extended grid.
    std::vector<GridFunction> fslices;
    fslices.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      GridFunction ustar = extend_initial_data(candidate.slices[i], problem.s, opt.decay_tol);
      fslices.push_back(nonlinearity(ustar, problem.p, problem.k));
    }
    TimeSlab fslab(times, std::move(fslices));
    TimeSlab duh = duhamel_field(fslab);
    const std::size_t offset = duh.grid().index_of(half.x_min);

    // Boundary trace argument [h - g - p].
    std::vector<complexd> harg(nt);
    if (problem.mode == BoundaryMode::ClosedLoop) {
      TimeTrace v = candidate.trace_at(0.0);
      TimeTrace fb = boundary_feedback(v, problem.r, problem.lambda);
      for (std::size_t i = 0; i < nt; ++i) harg[i] = fb.values[i];
    } else {
      for (std::size_t i = 0; i < nt; ++i) {
        double ti = times[i];
        auto idx = static_cast<std::size_t>(std::llround(ti / problem.h.dt));
        if (idx >= problem.h.size() ||
            std::abs(problem.h.t(idx) - ti) > 1e-9 * std::max(1.0, problem.T))
          fail(ErrorKind::Domain, "apply_Psi: open-loop data not sampled on the solver lattice");
        harg[i] = problem.h.values[idx];
      }
    }
    if (use_traces) {
      TimeTrace p_trace = neumann_trace_duhamel(fslab);
      for (std::size_t i = 0; i < nt; ++i)
        harg[i] -= g_trace.values[i] + p_trace.values[i];
    }
    TimeTrace harg_trace(0.0, T0, std::move(harg));
    TimeSlab wb = boundary_propagate(harg_trace, problem.s, half, times, opt.boundary);

    const complexd minus_i{0.0, -1.0};
    std::vector<GridFunction> out;
    out.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      std::vector<complexd> v(half.n);
      for (std::size_t j = 0; j < half.n; ++j)
        v[j] = free_term[i].values[j] + minus_i * duh.slices[i].values[offset + j] +
               wb.slices[i].values[j];
      out.emplace_back(half, std::move(v));
    }
    return TimeSlab(times, std::move(out));
  }

  TimeSlab initial_iterate() const {
    if (opt.initial_iterate == SolverOptions::InitialIterate::Zero)
      return TimeSlab::zero(half, 0.0, opt.dt, times.size());
    return TimeSlab(times, free_term);
  }
};

double slab_hs_sup(const TimeSlab& slab, SobolevIndex s, double decay_tol) {
  double sup = 0.0;
  for (const auto& sl : slab.slices)
    sup = std::max(sup, sobolev_norm_halfline(sl, s, decay_tol));
  return sup;
}

TimeSlab slab_difference(const TimeSlab& a, const TimeSlab& b) {
  std::vector<GridFunction> d;
  d.reserve(a.nt());
  for (std::size_t i = 0; i < a.nt(); ++i) {
    std::vector<complexd> v(a.grid().n);
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] = a.slices[i].values[j] - b.slices[i].values[j];
    d.emplace_back(a.grid(), std::move(v));
  }
  return TimeSlab(a.times, std::move(d));
}

double halfline_mass(const GridFunction& g) {
  double m = g.l2_norm();
  return m * m;
}

}  // namespace

TimeSlab apply_Psi(const TimeSlab& candidate, const NlsProblem& problem, double T0,
                   const SolverOptions& opt) {
  PsiContext ctx(problem, T0, opt);
  return ctx.run(candidate);
}

double xts_norm(const TimeSlab& slab, SobolevIndex s) {
  double sup_space = 0.0;
  for (const auto& sl : slab.slices)
    sup_space = std::max(sup_space, sobolev_norm_halfline(sl, s, 1.0));
  double sup_time = 0.0;
  double sigma = (2.0 * s.s + 1.0) / 4.0;
  for (std::size_t j = 0; j < slab.grid().n; ++j) {
    std::vector<complexd> tr(slab.nt());
    for (std::size_t i = 0; i < slab.nt(); ++i) tr[i] = slab.slices[i].values[j];
    TimeTrace trace(slab.times.front(), slab.times.back(), std::move(tr));
    sup_time = std::max(sup_time, sobolev_norm_interval(trace, sigma));
  }
  return sup_space + sup_time;
}

SolutionField picard_solve(const NlsProblem& problem, double T0, const SolverOptions& opt) {
  SolveDiagnostics diag;
  diag.warnings = problem.validate(opt.ctol);
  diag.T0 = T0;

  PsiContext ctx(problem, T0, opt);
  diag.A = sobolev_norm_halfline(problem.u0, problem.s, opt.decay_tol);
  if (problem.mode == BoundaryMode::OpenLoop)
    diag.A += (1.0 + problem.T) *
              sobolev_norm_interval(problem.h, (2.0 * problem.s.s - 1.0) / 4.0);
  diag.R = 2.0 * diag.A;

  TimeSlab u = ctx.initial_iterate();
  double prev_residual = -1.0;
  int rising = 0;
  bool converged = false;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    TimeSlab next = ctx.run(u);
    double residual = xts_norm(slab_difference(next, u), problem.s);
    double scale = std::max(xts_norm(next, problem.s), 1e-300);
    diag.residual_history.push_back(residual);
    if (prev_residual > 0.0) {
      double ratio = residual / prev_residual;
      diag.contraction_ratios.push_back(ratio);
      rising = (ratio >= 1.0) ? rising + 1 : 0;
      if (rising >= 3)
        fail(ErrorKind::NoContraction,
             "picard_solve: three consecutive non-contracting iterations");
    }
    prev_residual = residual;
    u = std::move(next);
    diag.iterations = it + 1;
    if (residual < opt.fixed_point_tol * scale) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(ErrorKind::NoContraction, "picard_solve: no convergence within the iteration budget");

  // Fixed-point residual of the returned field.
  TimeSlab check = ctx.run(u);
  double unorm = std::max(xts_norm(u, problem.s), 1e-300);
  diag.fixed_point_residual = xts_norm(slab_difference(check, u), problem.s) / unorm;
  diag.xts_norm = unorm;
  for (std::size_t i = 0; i < u.nt(); ++i) {
    diag.hs_norm_history.push_back(sobolev_norm_halfline(u.slices[i], problem.s, 1.0));
    diag.mass_history.push_back(halfline_mass(u.slices[i]));
  }

  SolutionField field{u, u.trace_at(0.0), std::move(diag)};
  return field;
}

std::pair<double, SolutionField> select_T0(const NlsProblem& problem, const SolverOptions& opt) {
  const double t0_min = problem.T / opt.t0_min_factor;
  double T0 = problem.T;
  while (true) {
    SolverOptions o = opt;
    // Keep at least 9 samples per attempt; snap T0 onto the dt lattice.
    o.dt = std::min(opt.dt, T0 / 8.0);
    auto cells = static_cast<std::size_t>(std::llround(T0 / o.dt));
    o.dt = T0 / static_cast<double>(std::max<std::size_t>(cells, 8));
    try {
      SolutionField field = picard_solve(problem, T0, o);
      return {T0, std::move(field)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoContraction) throw;
    }
    T0 *= 0.5;
    if (T0 < t0_min)
      fail(ErrorKind::Lifespan, "select_T0: lifespan collapsed below T / t0_min_factor");
  }
}

ContinuationResult continue_solution(const NlsProblem& problem, const SolverOptions& opt) {
  ContinuationResult result;
  const double hs0 =
      std::max(sobolev_norm_halfline(problem.u0, problem.s, opt.decay_tol), 1e-300);
  const double cap = opt.blowup_cap * hs0;

  NlsProblem current = problem;
  double t_cur = 0.0;
  result.time_history.push_back(0.0);
  result.norm_history.push_back(hs0);
  while (t_cur < problem.T - 1e-12) {
    current.T = problem.T - t_cur;
    if (current.mode == BoundaryMode::OpenLoop) {
      // Restrict the remaining boundary data onto [0, T - t_cur].
      std::size_t i0 = static_cast<std::size_t>(std::llround(t_cur / problem.h.dt));
      std::vector<complexd> rest(problem.h.values.begin() + static_cast<long>(i0),
                                 problem.h.values.end());
      if (rest.size() < 2) rest.assign(2, problem.h.values.back());
      current.h = TimeTrace(0.0, problem.h.dt * static_cast<double>(rest.size() - 1),
                            std::move(rest));
    }
    double T0 = 0.0;
    try {
      auto [t0, field] = select_T0(current, opt);
      T0 = t0;
      const auto& hist = field.diagnostics.hs_norm_history;
      for (std::size_t i = 1; i < hist.size(); ++i) {
        result.time_history.push_back(t_cur + field.slab.times[i]);
        result.norm_history.push_back(hist[i]);
      }
      current.u0 = field.slab.slices.back();
      result.fields.push_back(std::move(field));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Lifespan || e.kind() == ErrorKind::Truncation ||
          e.kind() == ErrorKind::NoContraction) {
        result.status = ContinuationStatus::BlowupDetected;
        result.t_reached = t_cur;
        result.final_norm = result.norm_history.back();
        return result;
      }
      throw;
    }
    t_cur += T0;
    if (result.norm_history.back() > cap) {
      result.status = ContinuationStatus::BlowupDetected;
      result.t_reached = t_cur;
      result.final_norm = result.norm_history.back();
      return result;
    }
  }
  result.status = ContinuationStatus::Completed;
  result.t_reached = problem.T;
  result.final_norm = result.norm_history.back();
  return result;
}

std::vector<double> lipschitz_probe(const NlsProblem& problem, const std::vector<double>& deltas,
                                    const SolverOptions& opt) {
  auto [T0, base] = select_T0(problem, opt);
  SolverOptions o = opt;
  o.dt = base.slab.dt();

  // Fixed smooth perturbation direction with bump(0) = bump'(0) = 0, so the
  // compatibility residual is unchanged at first order.
  const Grid1D& g = problem.u0.grid;
  auto bump = GridFunction::sample(g, [&](double x) {
    return x * x * std::exp(-2.0 * (x - 1.0) * (x - 1.0));
  });

  std::vector<double> ratios;
  ratios.reserve(deltas.size());
  for (double delta : deltas) {
    if (delta == 0.0) {
      ratios.push_back(0.0);
      continue;
    }
    NlsProblem pert = problem;
    std::vector<complexd> v = problem.u0.values;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += delta * bump.values[j];
    pert.u0 = GridFunction(g, std::move(v));
    SolutionField other = picard_solve(pert, T0, o);
    double num = xts_norm(slab_difference(other.slab, base.slab), problem.s);
    GridFunction diff0(g, [&] {
      std::vector<complexd> d(g.n);
      for (std::size_t j = 0; j < g.n; ++j) d[j] = delta * bump.values[j];
      return d;
    }());
    double den = sobolev_norm_halfline(diff0, problem.s, 1.0);
    ratios.push_back(num / den);
  }
  return ratios;
}

}  // namespace hlnls
