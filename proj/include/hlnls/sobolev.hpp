#pragma once

#include "hlnls/fourier.hpp"
#include "hlnls/grid.hpp"

namespace hlnls {

/// C^4 smoothstep: 0 at u <= 0, 1 at u >= 1, first four derivatives vanish at
/// both ends.
double smoothstep4(double u);

/// One-sided finite-difference derivative at the left end of a uniform grid.
/// order_of_derivative in {1, 3}; 4th / 3rd order accurate stencils.
complexd one_sided_derivative(const std::vector<complexd>& v, double h, int order_of_derivative);

/// ---- Line norms -----------------------------------------------------------

/// ( integral (1+beta^2)^s |ghat|^2 dbeta )^{1/2} under the unitary convention.
/// Throws a resolution error when the weighted spectral tail carries more than
/// tail_tol of the total mass.
double sobolev_norm_line(const GridFunction& g, SobolevIndex s, double tail_tol = 1e-6);

/// Same norm computed directly from a half-line panel spectrum (odd node
/// layout from build_halfline_mesh).
double sobolev_norm_halfline_spectrum(const SpectralFunction& sf, double order);

/// ---- Interval norms -------------------------------------------------------

/// Compactly supported extension of a trace off [t_min, t_max]: reflection
/// with a first-derivative corrector near each endpoint, tapered to zero
/// within a quarter of the interval. Exact (zero) outside the support of
/// interior-supported data. Valid as an H^sigma upper-bound surrogate for
/// sigma < 5/2.
TimeTrace reflective_extension(const TimeTrace& h);

/// H^sigma(0,T) upper-bound surrogate: line norm of reflective_extension(h).
double sobolev_norm_interval(const TimeTrace& h, double sigma);

/// ---- Boundary-data extension (Lemma-style difference construction) -------

/// Extends h from [0,T] to a zero-mean trace supported in [0, 2T] (s < 3/2)
/// or [0, 2T+1) (s > 3/2, requires |h(0)| small; cutoff construction).
TimeTrace extend_boundary_data(const TimeTrace& h, SobolevIndex s, double T,
                               double compat_tol = 1e-6);

/// Antiderivative of a zero-mean compactly supported trace (cumulative
/// trapezoid); throws when the mean is not numerically zero.
TimeTrace antiderivative(const TimeTrace& h_e);

/// ---- Initial-data extension ----------------------------------------------

/// Reflection extension of u0 from [0, L] to [-L, L] matching derivatives
/// 0..3 at x = 0: even reflection plus an odd cubic corrector under a C^4
/// cutoff. Exact for data with vanishing odd derivatives (even restrictions).
GridFunction extend_initial_data(const GridFunction& u0, SobolevIndex s,
                                 double decay_tol = 1e-8);

/// H^s(R_+) surrogate: line norm of the fixed reflection extension.
double sobolev_norm_halfline(const GridFunction& u0, SobolevIndex s, double decay_tol = 1e-8);

}  // namespace hlnls
