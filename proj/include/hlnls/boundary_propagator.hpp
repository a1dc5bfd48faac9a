#pragma once

#include <utility>

#include "hlnls/grid.hpp"
#include "hlnls/quadrature.hpp"
#include "hlnls/sobolev.hpp"

namespace hlnls {

struct BoundarySpectraOptions {
  double theta = 0.04;       // per-panel phase budget for the frequency mesh
  double tail_drop = 1e-8;   // beta_max rule: |hhat(beta_max^2)| < tail_drop * max
  double beta_cap = 64.0;    // hard frequency ceiling
  double t_phase = -1.0;     // largest evolution time the mesh must support (< 0: support end)
};

/// Laplace-line spectra of the boundary evolution operator, mapped into the
/// unitary convention:
///   phi_hat(beta) = sqrt(2 pi)/(i pi) hhat_e(beta^2)    (beta >= 0)
///   psi_hat(beta) = -sqrt(2 pi)/pi    hhat_e(-beta^2)   (beta >= 0)
/// where hhat_e(omega) = integral h_e(t) e^{i omega t} dt is evaluated by
/// direct Filon quadrature over the compact support. Returned on a graded
/// half-line panel mesh (see build_halfline_mesh).
std::pair<SpectralFunction, SpectralFunction> boundary_spectra(
    const TimeTrace& h_e, const BoundarySpectraOptions& opts = {});

/// (2 pi)^{-1/2} integral e^{-i beta^2 t + i beta x} phi_hat(beta) dbeta on the
/// grid; equals the free evolution of phi_{h_e}.
GridFunction eval_Wb1(const SpectralFunction& phi_hat, const Grid1D& grid, double t);

/// (2 pi)^{-1/2} integral e^{+i beta^2 t - beta |x|} psi_hat(beta) dbeta on the
/// grid, with an embedded convergence estimate (quadratic vs linear data
/// interpolation); throws a quadrature error when the estimate exceeds tol.
GridFunction eval_Wb2(const SpectralFunction& psi_hat, const Grid1D& grid, double t,
                      double tol = 1e-4);

/// Synthesis of a half-line panel spectrum back to a grid function,
/// (2 pi)^{-1/2} integral fhat(beta) e^{i beta x} dbeta.
GridFunction spectrum_to_function(const SpectralFunction& fhat, const Grid1D& grid);

/// Oscillatory kernel K_t(x,y) = integral_0^inf exp(i beta^2 t - beta|x| - i y beta) dbeta
/// by adaptive panel quadrature with an asymptotic tail; test oracle.
complexd kernel_Kt(double x, double y, double t, double tol = 1e-8);

struct BoundaryFieldOptions {
  int window_cells = 48;    // half-width (in trace cells) of the sqrt-substituted window
  int gl_points = 24;       // Gauss-Legendre points per window
  double phi_theta = 0.03;  // mesh phase budget for the W_{b,1} synthesis
  double pad_factor = 4.0;  // synthesis-domain half-width, in units of the grid span
};

/// W_{b,1} and W_{b,2} fields of an extended boundary trace on a space-time
/// grid, through the closed-form half-line kernel (time-side convolution).
/// times must lie on the trace's dt lattice starting at 0.
TimeSlab boundary_field_wb1(const TimeTrace& h_e, const Grid1D& grid,
                            const std::vector<double>& times, const BoundaryFieldOptions& o = {});
TimeSlab boundary_field_wb2(const TimeTrace& h_e, const Grid1D& grid,
                            const std::vector<double>& times, const BoundaryFieldOptions& o = {});

/// Full boundary evolution W_b(t) h_e = W_{b,1} + W_{b,2} for boundary data h
/// on [0, T] (extended internally per the s-dependent construction).
TimeSlab boundary_propagate(const TimeTrace& h, SobolevIndex s, const Grid1D& grid,
                            const std::vector<double>& times, const BoundaryFieldOptions& o = {});

}  // namespace hlnls
