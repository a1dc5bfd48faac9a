#include "hlnls/line_propagator.hpp"

#include <cmath>

#include "hlnls/quadrature.hpp"

namespace hlnls {

GridFunction free_propagate(const GridFunction& phi, double t, double tail_tol) {
  LineSpectrum sp = analyze(phi);
  require_resolved(sp, 0.0, tail_tol, "free_propagate");
  sp.apply_multiplier([t](double b) { return std::polar(1.0, -b * b * t); });
  return synthesize(sp);
}

namespace {

// Spectra of all slab slices, computed once.
std::vector<LineSpectrum> analyze_slab(const TimeSlab& slab) {
  std::vector<LineSpectrum> sp;
  sp.reserve(slab.nt());
  for (const auto& s : slab.slices) sp.push_back(analyze(s));
  return sp;
}

}  // namespace

GridFunction duhamel(const TimeSlab& f_slab, double t) {
  const double t0 = f_slab.times.front();
  const double dt = f_slab.dt();
  if (t < t0 - 1e-12 || t > f_slab.horizon() + 1e-9)
    fail(ErrorKind::Domain, "duhamel: t beyond the slab horizon");
  double span = t - t0;
  auto full_cells = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
  full_cells = std::min(full_cells, f_slab.nt() - 1);
  const double frac = span - static_cast<double>(full_cells) * dt;

  const auto spectra = analyze_slab(f_slab);
  LineSpectrum acc = spectra.front();
  for (auto& z : acc.hat) z = complexd{0.0, 0.0};

  if (full_cells >= 1) {
    auto w = simpson_weights(full_cells + 1);
    for (std::size_t j = 0; j <= full_cells; ++j) {
      double tau = t0 + dt * static_cast<double>(j);
      const auto& sj = spectra[j];
      for (std::size_t k = 0; k < acc.hat.size(); ++k) {
        double b = acc.beta(k);
        acc.hat[k] += (w[j] * dt) * sj.hat[k] * std::polar(1.0, -b * b * (t - tau));
      }
    }
  }
  if (frac > 1e-12 * std::max(1.0, dt)) {
    // Partial trailing cell: trapezoid with a linearly interpolated endpoint.
    const auto& s0 = spectra[full_cells];
    const auto& s1 = spectra[std::min(full_cells + 1, f_slab.nt() - 1)];
    const double alpha = frac / dt;
    double tau0 = t0 + dt * static_cast<double>(full_cells);
    for (std::size_t k = 0; k < acc.hat.size(); ++k) {
      double b = acc.beta(k);
      complexd f_end = (1.0 - alpha) * s0.hat[k] + alpha * s1.hat[k];
      complexd e0 = std::polar(1.0, -b * b * (t - tau0));
      acc.hat[k] += 0.5 * frac * (s0.hat[k] * e0 + f_end);
    }
  }
  return synthesize(acc);
}

TimeSlab duhamel_field(const TimeSlab& f_slab) {
  const auto spectra = analyze_slab(f_slab);
  const double dt = f_slab.dt();
  const std::size_t nt = f_slab.nt();
  std::vector<GridFunction> out;
  out.reserve(nt);
  out.push_back(GridFunction::zero(f_slab.grid()));
  for (std::size_t i = 1; i < nt; ++i) {
    auto w = simpson_weights(i + 1);
    LineSpectrum acc = spectra.front();
    for (auto& z : acc.hat) z = complexd{0.0, 0.0};
    for (std::size_t j = 0; j <= i; ++j) {
      const auto& sj = spectra[j];
      double dtau = f_slab.times[i] - f_slab.times[j];
      for (std::size_t k = 0; k < acc.hat.size(); ++k) {
        double b = acc.beta(k);
        acc.hat[k] += (w[j] * dt) * sj.hat[k] * std::polar(1.0, -b * b * dtau);
      }
    }
    out.push_back(synthesize(acc));
  }
  return TimeSlab(f_slab.times, std::move(out));
}

TimeTrace neumann_trace_free(const GridFunction& u0_star, const std::vector<double>& times) {
  if (times.size() < 2) fail(ErrorKind::InvalidInput, "neumann_trace_free: need >= 2 times");
  LineSpectrum sp = analyze(u0_star);
  require_resolved(sp, 0.0, 1e-4, "neumann_trace_free");
  std::vector<complexd> g(times.size());
  const double scale = sp.dbeta / 2.5066282746310005024;
  for (std::size_t i = 0; i < times.size(); ++i) {
    complexd acc{0.0, 0.0};
    for (std::size_t k = 0; k < sp.size(); ++k) {
      double b = sp.beta(k);
      acc += complexd(0.0, b) * sp.hat[k] * std::polar(1.0, -b * b * times[i]);
    }
    g[i] = acc * scale;
  }
  return TimeTrace(times.front(), times.back(), std::move(g));
}

TimeTrace neumann_trace_duhamel(const TimeSlab& f_slab) {
  const auto spectra = analyze_slab(f_slab);
  const double dt = f_slab.dt();
  const std::size_t nt = f_slab.nt();
  const double scale = spectra[0].dbeta / 2.5066282746310005024;
  const complexd minus_i{0.0, -1.0};
  std::vector<complexd> p(nt, complexd{0.0, 0.0});
  for (std::size_t i = 1; i < nt; ++i) {
    auto w = simpson_weights(i + 1);
    complexd acc{0.0, 0.0};
    for (std::size_t j = 0; j <= i; ++j) {
      const auto& sj = spectra[j];
      double dtau = f_slab.times[i] - f_slab.times[j];
      complexd inner{0.0, 0.0};
      for (std::size_t k = 0; k < sj.hat.size(); ++k) {
        double b = sj.beta(k);
        inner += complexd(0.0, b) * sj.hat[k] * std::polar(1.0, -b * b * dtau);
      }
      acc += (w[j] * dt) * inner;
    }
    p[i] = minus_i * acc * scale;
  }
  return TimeTrace(f_slab.times.front(), f_slab.horizon(), std::move(p));
}

}  // namespace hlnls
