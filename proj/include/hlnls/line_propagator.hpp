#pragma once

#include "hlnls/fourier.hpp"
#include "hlnls/grid.hpp"

namespace hlnls {

/// Free Schroedinger group on the line: multiplies the spectrum by
/// exp(-i beta^2 t), so that i u_t + u_xx = 0. Unitary in L2.
GridFunction free_propagate(const GridFunction& phi, double t, double tail_tol = 1e-6);

/// Duhamel integral u(t) = integral_0^t W(t - tau) f(tau) dtau of a forcing
/// slab, by composite Simpson over the slab's time grid (trapezoid fallback on
/// a trailing odd cell). t may lie between slab nodes; the final partial cell
/// is handled by linear interpolation of the forcing.
GridFunction duhamel(const TimeSlab& f_slab, double t);

/// Duhamel integral evaluated at every slab time (one pass over the slice
/// spectra); slice i equals duhamel(f_slab, times[i]).
TimeSlab duhamel_field(const TimeSlab& f_slab);

/// g(t) = d/dx [W(t) u0*] at x = 0, by spectral differentiation, on the given
/// times.
TimeTrace neumann_trace_free(const GridFunction& u0_star, const std::vector<double>& times);

/// p(t) = -i d/dx integral_0^t W(t - tau) f(tau) dtau at x = 0, on the slab's
/// own time grid.
TimeTrace neumann_trace_duhamel(const TimeSlab& f_slab);

}  // namespace hlnls
