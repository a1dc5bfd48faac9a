#pragma once

#include <vector>

#include "hlnls/grid.hpp"

namespace hlnls {

/// Composite Simpson weights for n uniformly spaced samples (unit spacing).
/// Odd n is plain Simpson; even n falls back to trapezoid on the last cell.
std::vector<double> simpson_weights(std::size_t n);

/// Composite Simpson integral of complex samples with spacing h.
complexd simpson(const std::vector<complexd>& f, double h);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t n);

/// One panel of the oscillatory quadrature
///   integral_{c-a}^{c+a} exp(i t beta^2 + w beta) f(beta) dbeta
/// with f interpolated quadratically through its values at beta = c-a, c, c+a.
/// The linear part of the phase is integrated exactly; the quadratic residual
/// exp(i t (beta-c)^2) is folded into the interpolated data, so accuracy
/// requires a^2 |t| to be small along with the data's variation per panel.
complexd osc_panel_integral(double c, double a, complexd f_left, complexd f_mid,
                            complexd f_right, double t_coeff, complexd w);

/// Nonuniform half-line panel mesh for the integrals above. Node layout:
/// panel edges at even indices, midpoints at odd indices (odd total count).
struct OscMesh {
  std::vector<double> nodes;

  std::size_t panels() const { return nodes.size() / 2; }
  double edge(std::size_t p) const { return nodes[2 * p]; }
  double mid(std::size_t p) const { return nodes[2 * p + 1]; }
};

/// Builds a mesh on [0, beta_max] sized so quadratic-phase residuals up to
/// |t| <= t_phase stay below theta per panel and data oscillating like
/// exp(i beta^2 tau), |tau| <= data_radius, is resolved. Panels are graded
/// geometrically near beta = 0.
OscMesh build_halfline_mesh(double beta_max, double t_phase, double data_radius, double theta);

/// integral over the mesh of exp(i t beta^2 + w beta) f(beta) dbeta,
/// f given at every mesh node.
complexd osc_mesh_integral(const OscMesh& mesh, const std::vector<complexd>& f_nodes,
                           double t_coeff, complexd w);

/// Plain integral of f over the mesh (t = 0, w = 0 kernel), e.g. for norms.
double mesh_integral_real(const OscMesh& mesh, const std::vector<double>& f_nodes);

/// Fourier integral of a compactly supported trace at one real frequency:
///   integral h(t) exp(i omega t) dt
/// by Filon-type panel quadrature on the trace's own grid (accuracy uniform
/// in omega).
complexd trace_fourier_integral(const TimeTrace& h, double omega);

}  // namespace hlnls
