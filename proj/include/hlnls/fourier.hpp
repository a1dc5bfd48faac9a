#pragma once

#include <functional>

#include "hlnls/grid.hpp"

namespace hlnls {

/// The one transform normalization used across the project:
///   ghat(beta) = (2 pi)^{-1/2} integral g(x) e^{-i beta x} dx
///   g(x)       = (2 pi)^{-1/2} integral ghat(beta) e^{+i beta x} dbeta
/// so that the L2 norms of g and ghat coincide (Parseval).
inline constexpr const char* kUnitaryAngularConvention = "unitary-angular";

/// Continuum-normalized spectrum of a GridFunction, kept in raw DFT order.
/// beta_k spacing is 2 pi / (n dx); the grid's n samples are treated as one
/// period of length n dx.
struct LineSpectrum {
  Grid1D grid;
  std::vector<complexd> hat;
  double dbeta = 0.0;

  std::size_t size() const { return hat.size(); }
  double beta(std::size_t k) const {
    auto n = hat.size();
    auto half = n / 2;
    return (k <= (n - 1) / 2) ? dbeta * static_cast<double>(k)
                              : dbeta * (static_cast<double>(k) - static_cast<double>(n));
    (void)half;
  }

  /// Pointwise multiplier m(beta).
  void apply_multiplier(const std::function<complexd(double)>& m) {
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= m(beta(k));
  }

  /// Spectral synthesis at one coordinate (not restricted to grid points).
  complexd eval_at(double x) const;
  /// Spectral synthesis of the derivative at one coordinate.
  complexd eval_derivative_at(double x) const;

  /// Fraction of the (1+beta^2)^s weighted energy carried by |beta| above
  /// the given fraction of the Nyquist frequency.
  double tail_fraction(double s, double band_fraction = 0.5) const;
};

LineSpectrum analyze(const GridFunction& g);
GridFunction synthesize(const LineSpectrum& s);

/// Spec-facing transform pair: ascending frequency order.
SpectralFunction fourier_transform(const GridFunction& g);
GridFunction inverse_fourier_transform(const SpectralFunction& s, const Grid1D& grid);

/// Enforces the spectral resolution contract (weighted tail mass <= tol).
void require_resolved(const LineSpectrum& s, double sobolev_order, double tol = 1e-6,
                      const char* who = "spectrum");

}  // namespace hlnls
