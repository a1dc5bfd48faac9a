#include "hlnls/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "hlnls/fft.hpp"

namespace hlnls {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
}

complexd LineSpectrum::eval_at(double x) const {
  complexd acc{0.0, 0.0};
  for (std::size_t k = 0; k < hat.size(); ++k) {
    double b = beta(k);
    acc += hat[k] * std::polar(1.0, b * x);
  }
  return acc * (dbeta / kSqrt2Pi);
}

complexd LineSpectrum::eval_derivative_at(double x) const {
  complexd acc{0.0, 0.0};
  for (std::size_t k = 0; k < hat.size(); ++k) {
    double b = beta(k);
    acc += complexd(0.0, b) * hat[k] * std::polar(1.0, b * x);
  }
  return acc * (dbeta / kSqrt2Pi);
}

double LineSpectrum::tail_fraction(double s, double band_fraction) const {
  double beta_nyq = dbeta * static_cast<double>(hat.size()) / 2.0;
  double cut = band_fraction * beta_nyq;
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < hat.size(); ++k) {
    double b = beta(k);
    double w = std::pow(1.0 + b * b, s) * std::norm(hat[k]);
    total += w;
    if (std::abs(b) >= cut) tail += w;
  }
  return total > 0.0 ? tail / total : 0.0;
}

LineSpectrum analyze(const GridFunction& g) {
  if (!all_finite(g.values)) fail(ErrorKind::InvalidInput, "analyze: non-finite input");
  const std::size_t n = g.grid.n;
  LineSpectrum s;
  s.grid = g.grid;
  s.dbeta = 2.0 * M_PI / (static_cast<double>(n) * g.grid.dx);
  s.hat = g.values;
  dft(s.hat, -1);
  const double scale = g.grid.dx / kSqrt2Pi;
  for (std::size_t k = 0; k < n; ++k) {
    double b = s.beta(k);
    s.hat[k] *= scale * std::polar(1.0, -b * g.grid.x_min);
  }
  return s;
}

GridFunction synthesize(const LineSpectrum& s) {
  const std::size_t n = s.hat.size();
  std::vector<complexd> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double b = s.beta(k);
    v[k] = s.hat[k] * std::polar(1.0, b * s.grid.x_min);
  }
  dft(v, +1);
  const double scale = s.dbeta / kSqrt2Pi;
  for (auto& z : v) z *= scale;
  return GridFunction(s.grid, std::move(v));
}

SpectralFunction fourier_transform(const GridFunction& g) {
  LineSpectrum s = analyze(g);
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.beta(a) < s.beta(b); });
  std::vector<double> freqs(n);
  std::vector<complexd> vals(n);
  for (std::size_t k = 0; k < n; ++k) {
    freqs[k] = s.beta(order[k]);
    vals[k] = s.hat[order[k]];
  }
  return SpectralFunction(std::move(freqs), std::move(vals), kUnitaryAngularConvention);
}

GridFunction inverse_fourier_transform(const SpectralFunction& sf, const Grid1D& grid) {
  if (sf.convention != kUnitaryAngularConvention)
    fail(ErrorKind::InvalidInput, "inverse_fourier_transform: unexpected convention");
  const std::size_t n = grid.n;
  if (sf.size() != n)
    fail(ErrorKind::InvalidInput, "inverse_fourier_transform: size mismatch with grid");
  LineSpectrum s;
  s.grid = grid;
  s.dbeta = 2.0 * M_PI / (static_cast<double>(n) * grid.dx);
  s.hat.assign(n, complexd{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    // Map ascending frequency back to raw DFT order.
    double b = sf.freqs[i];
    auto k = static_cast<long long>(std::llround(b / s.dbeta));
    if (k < 0) k += static_cast<long long>(n);
    if (k < 0 || k >= static_cast<long long>(n) ||
        std::abs(s.beta(static_cast<std::size_t>(k)) - b) > 1e-9 * s.dbeta)
      fail(ErrorKind::InvalidInput, "inverse_fourier_transform: freqs not on the grid lattice");
    s.hat[static_cast<std::size_t>(k)] = sf.values[i];
  }
  return synthesize(s);
}

void require_resolved(const LineSpectrum& s, double sobolev_order, double tol, const char* who) {
  double frac = s.tail_fraction(sobolev_order);
  if (frac > tol)
    fail(ErrorKind::Resolution, std::string(who) + ": spectral tail mass " +
                                    std::to_string(frac) + " exceeds " + std::to_string(tol));
}

}  // namespace hlnls
