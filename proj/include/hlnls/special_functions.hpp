#pragma once

#include "hlnls/grid.hpp"

namespace hlnls {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), any complex z.
/// Weideman's rational approximation on the closed upper half-plane,
/// Im z < 0 handled through w(z) = 2 exp(-z^2) - w(-z).
complexd faddeeva_w(complexd z);

/// Half-line oscillatory kernel
///   G(sigma, b) = integral_0^inf exp(i sigma beta^2 - b beta) dbeta
/// for Re b >= 0 (improper limits where only conditionally convergent).
/// Closed form through the Faddeeva function; G(0, b) = 1/b.
complexd halfline_kernel(double sigma, complexd b);

}  // namespace hlnls
