#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hlnls/errors.hpp"

namespace hlnls {

using complexd = std::complex<double>;

inline bool all_finite(const std::vector<complexd>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// Uniform 1-D spatial grid, endpoints inclusive.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n = 0;
  double dx = 0.0;

  Grid1D() = default;
  Grid1D(double xmin, double xmax, std::size_t npts)
      : x_min(xmin), x_max(xmax), n(npts) {
    if (n < 8) fail(ErrorKind::InvalidInput, "Grid1D: n must be >= 8");
    dx = (x_max - x_min) / static_cast<double>(n - 1);
    if (!(dx > 0.0)) fail(ErrorKind::InvalidInput, "Grid1D: dx must be positive");
  }

  double x(std::size_t j) const { return x_min + dx * static_cast<double>(j); }

  bool same_as(const Grid1D& o, double tol = 1e-12) const {
    return n == o.n && std::abs(x_min - o.x_min) < tol && std::abs(x_max - o.x_max) < tol;
  }

  /// Index of a grid point at coordinate x (must lie on the grid).
  std::size_t index_of(double xq, double tol = 1e-9) const {
    double fj = (xq - x_min) / dx;
    auto j = static_cast<long long>(std::llround(fj));
    if (j < 0 || j >= static_cast<long long>(n) || std::abs(fj - static_cast<double>(j)) > tol)
      fail(ErrorKind::Domain, "Grid1D: coordinate not on grid");
    return static_cast<std::size_t>(j);
  }
};

/// Complex samples of a function of x on a Grid1D.
struct GridFunction {
  Grid1D grid;
  std::vector<complexd> values;

  GridFunction() = default;
  GridFunction(const Grid1D& g, std::vector<complexd> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n)
      fail(ErrorKind::InvalidInput, "GridFunction: value count does not match grid");
    if (!all_finite(values)) fail(ErrorKind::InvalidInput, "GridFunction: non-finite entries");
  }
  static GridFunction zero(const Grid1D& g) {
    return GridFunction(g, std::vector<complexd>(g.n, complexd{0.0, 0.0}));
  }
  template <typename F>
  static GridFunction sample(const Grid1D& g, F&& f) {
    std::vector<complexd> v(g.n);
    for (std::size_t j = 0; j < g.n; ++j) v[j] = complexd(f(g.x(j)));
    return GridFunction(g, std::move(v));
  }

  std::size_t size() const { return values.size(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z));
    return m;
  }

  /// Trapezoid-rule L2 norm over the grid interval.
  double l2_norm() const {
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      double w = (j == 0 || j + 1 == values.size()) ? 0.5 : 1.0;
      s += w * std::norm(values[j]);
    }
    return std::sqrt(s * grid.dx);
  }
};

/// Complex samples of a function of t on a uniform time grid, endpoints inclusive.
struct TimeTrace {
  double t_min = 0.0;
  double t_max = 1.0;
  double dt = 0.0;
  std::vector<complexd> values;

  TimeTrace() = default;
  TimeTrace(double tmin, double tmax, std::vector<complexd> v)
      : t_min(tmin), t_max(tmax), values(std::move(v)) {
    if (values.size() < 2) fail(ErrorKind::InvalidInput, "TimeTrace: needs >= 2 samples");
    dt = (t_max - t_min) / static_cast<double>(values.size() - 1);
    if (!(dt > 0.0)) fail(ErrorKind::InvalidInput, "TimeTrace: dt must be positive");
    if (!all_finite(values)) fail(ErrorKind::InvalidInput, "TimeTrace: non-finite entries");
  }
  template <typename F>
  static TimeTrace sample(double tmin, double tmax, std::size_t n, F&& f) {
    std::vector<complexd> v(n);
    double dt = (tmax - tmin) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) v[j] = complexd(f(tmin + dt * static_cast<double>(j)));
    return TimeTrace(tmin, tmax, std::move(v));
  }
  static TimeTrace zero(double tmin, double tmax, std::size_t n) {
    return sample(tmin, tmax, n, [](double) { return complexd{0.0, 0.0}; });
  }

  std::size_t size() const { return values.size(); }
  double t(std::size_t j) const { return t_min + dt * static_cast<double>(j); }

  double l2_norm() const {
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      double w = (j == 0 || j + 1 == values.size()) ? 0.5 : 1.0;
      s += w * std::norm(values[j]);
    }
    return std::sqrt(s * dt);
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z));
    return m;
  }
};

/// Complex samples on a strictly increasing frequency grid, together with the
/// transform normalization they were produced under.
struct SpectralFunction {
  std::vector<double> freqs;
  std::vector<complexd> values;
  std::string convention;

  SpectralFunction() = default;
  SpectralFunction(std::vector<double> f, std::vector<complexd> v, std::string conv)
      : freqs(std::move(f)), values(std::move(v)), convention(std::move(conv)) {
    if (freqs.size() != values.size())
      fail(ErrorKind::InvalidInput, "SpectralFunction: freqs/values size mismatch");
    for (std::size_t k = 1; k < freqs.size(); ++k)
      if (!(freqs[k] > freqs[k - 1]))
        fail(ErrorKind::InvalidInput, "SpectralFunction: freqs must be strictly increasing");
  }

  std::size_t size() const { return values.size(); }
};

/// Sobolev regularity order. As a solution regularity the paper restricts
/// s to (1/2, 7/2) excluding 3/2; as a plain norm order any real is allowed.
struct SobolevIndex {
  double s = 0.0;

  SobolevIndex() = default;
  explicit SobolevIndex(double order) : s(order) {}

  bool valid_solution_regularity() const {
    return s > 0.5 && s < 3.5 && std::abs(s - 1.5) > 1e-12;
  }
  static SobolevIndex solution_regularity(double order) {
    SobolevIndex idx(order);
    if (!idx.valid_solution_regularity())
      fail(ErrorKind::InvalidInput,
           "SobolevIndex: solution regularity must lie in (1/2,7/2) \\ {3/2}");
    return idx;
  }
};

/// Dense space-time field: one GridFunction per time, uniform time step.
struct TimeSlab {
  std::vector<double> times;
  std::vector<GridFunction> slices;

  TimeSlab() = default;
  TimeSlab(std::vector<double> ts, std::vector<GridFunction> sl)
      : times(std::move(ts)), slices(std::move(sl)) {
    validate();
  }

  static TimeSlab zero(const Grid1D& g, double t0, double dt, std::size_t nt) {
    std::vector<double> ts(nt);
    std::vector<GridFunction> sl;
    sl.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      ts[i] = t0 + dt * static_cast<double>(i);
      sl.push_back(GridFunction::zero(g));
    }
    return TimeSlab(std::move(ts), std::move(sl));
  }

  void validate() const {
    if (times.size() != slices.size() || times.size() < 2)
      fail(ErrorKind::InvalidInput, "TimeSlab: times/slices mismatch");
    double dt0 = times[1] - times[0];
    if (!(dt0 > 0.0)) fail(ErrorKind::InvalidInput, "TimeSlab: dt must be positive");
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (std::abs((times[i] - times[i - 1]) - dt0) > 1e-9 * std::max(1.0, std::abs(times.back())))
        fail(ErrorKind::InvalidInput, "TimeSlab: nonuniform dt");
      if (!slices[i].grid.same_as(slices[0].grid))
        fail(ErrorKind::InvalidInput, "TimeSlab: slices on different grids");
    }
  }

  const Grid1D& grid() const { return slices.front().grid; }
  std::size_t nt() const { return times.size(); }
  double dt() const { return times[1] - times[0]; }
  double horizon() const { return times.back(); }

  /// Trace of the field at a fixed grid coordinate.
  TimeTrace trace_at(double xq) const {
    std::size_t j = grid().index_of(xq);
    std::vector<complexd> v(nt());
    for (std::size_t i = 0; i < nt(); ++i) v[i] = slices[i].values[j];
    return TimeTrace(times.front(), times.back(), std::move(v));
  }
};

}  // namespace hlnls
