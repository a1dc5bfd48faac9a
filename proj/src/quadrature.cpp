#include "hlnls/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hlnls {

std::vector<double> simpson_weights(std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "simpson_weights: need >= 2 samples");
  std::vector<double> w(n, 0.0);
  std::size_t m = n;
  bool trapezoid_tail = (n % 2 == 0);
  if (trapezoid_tail) m = n - 1;
  if (m >= 3) {
    w[0] += 1.0 / 3.0;
    for (std::size_t j = 1; j + 1 < m; ++j) w[j] += (j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
    w[m - 1] += 1.0 / 3.0;
  } else {
    // Two samples only: pure trapezoid.
    w[0] += 0.5;
    w[1] += 0.5;
    return w;
  }
  if (trapezoid_tail) {
    w[n - 2] += 0.5;
    w[n - 1] += 0.5;
  }
  return w;
}

complexd simpson(const std::vector<complexd>& f, double h) {
  auto w = simpson_weights(f.size());
  complexd acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) acc += w[j] * f[j];
  return acc * h;
}

const GaussLegendre& gauss_legendre(std::size_t n) {
  static std::map<std::size_t, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
    }
    double dp = n * (x * p0 - p1) / (x * x - 1.0);
    gl.nodes[n - 1 - i] = x;
    gl.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  auto [pos, ok] = cache.emplace(n, std::move(gl));
  (void)ok;
  return pos->second;
}

complexd osc_panel_integral(double c, double a, complexd f_left, complexd f_mid, complexd f_right,
                            double t_coeff, complexd w) {
  const complexd i_unit{0.0, 1.0};
  const complexd z = (2.0 * i_unit * t_coeff * c + w) * a;
  const complexd q = std::exp(i_unit * (t_coeff * a * a));
  const complexd fm = f_left * q, f0 = f_mid, fp = f_right * q;

  complexd M0, M1, M2;  // moments of 1, xi, xi^2 against e^{z xi}, times exp(center phase)
  const complexd phase0 = i_unit * t_coeff * c * c + w * c;
  if (std::abs(z) < 0.8) {
    const complexd z2 = z * z;
    const complexd m0 =
        2.0 * (1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0 +
               z2 * z2 * z2 * z2 / 362880.0 + z2 * z2 * z2 * z2 * z2 / 39916800.0);
    const complexd m1 = 2.0 * z *
                        (1.0 / 3.0 + z2 / 30.0 + z2 * z2 / 840.0 + z2 * z2 * z2 / 45360.0 +
                         z2 * z2 * z2 * z2 / 3991680.0);
    const complexd m2 =
        2.0 * (1.0 / 3.0 + z2 / 10.0 + z2 * z2 / 168.0 + z2 * z2 * z2 / 6480.0 +
               z2 * z2 * z2 * z2 / 443520.0 + z2 * z2 * z2 * z2 * z2 / 47174400.0);
    const complexd E0 = std::exp(phase0);
    M0 = E0 * m0;
    M1 = E0 * m1;
    M2 = E0 * m2;
  } else {
    // Express through the (bounded) kernel values at the panel nodes.
    const complexd Ep = std::exp(phase0 + z);
    const complexd Em = std::exp(phase0 - z);
    const complexd d = (Ep - Em) / z;
    M0 = d;
    M1 = (Ep + Em) / z - d / z;
    M2 = d - 2.0 / z * M1;
  }
  const complexd Mm = 0.5 * (M2 - M1);
  const complexd Mc = M0 - M2;
  const complexd Mp = 0.5 * (M2 + M1);
  return a * (fm * Mm + f0 * Mc + fp * Mp);
}

OscMesh build_halfline_mesh(double beta_max, double t_phase, double data_radius, double theta) {
  if (!(beta_max > 0.0) || !(theta > 0.0))
    fail(ErrorKind::InvalidInput, "build_halfline_mesh: bad parameters");
  const double phase_scale = std::max(t_phase + data_radius, 1e-9);
  const double w_kernel = 2.0 * std::sqrt(theta / phase_scale);
  const double w_cap = beta_max / 16.0;
  auto rule_width = [&](double beta) {
    double w = std::min(w_kernel, w_cap);
    if (data_radius > 0.0 && beta > 0.0) w = std::min(w, theta / (beta * data_radius));
    return w;
  };

  std::vector<double> edges;
  edges.push_back(0.0);
  // Geometric grading out of beta = 0, then march by the width rules.
  double w0 = rule_width(0.0) * 1e-3;
  double beta = 0.0;
  double w = w0;
  while (beta < beta_max) {
    double wr = rule_width(beta);
    w = std::min(w * 1.6, wr);
    beta = std::min(beta + w, beta_max);
    edges.push_back(beta);
  }
  OscMesh mesh;
  mesh.nodes.reserve(2 * edges.size());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    mesh.nodes.push_back(edges[p]);
    mesh.nodes.push_back(0.5 * (edges[p] + edges[p + 1]));
  }
  mesh.nodes.push_back(edges.back());
  return mesh;
}

complexd osc_mesh_integral(const OscMesh& mesh, const std::vector<complexd>& f_nodes,
                           double t_coeff, complexd w) {
  if (f_nodes.size() != mesh.nodes.size())
    fail(ErrorKind::InvalidInput, "osc_mesh_integral: node count mismatch");
  complexd acc{0.0, 0.0};
  for (std::size_t p = 0; p < mesh.panels(); ++p) {
    double e0 = mesh.nodes[2 * p];
    double e1 = mesh.nodes[2 * p + 2];
    double c = mesh.nodes[2 * p + 1];
    double a = 0.5 * (e1 - e0);
    acc += osc_panel_integral(c, a, f_nodes[2 * p], f_nodes[2 * p + 1], f_nodes[2 * p + 2],
                              t_coeff, w);
  }
  return acc;
}

double mesh_integral_real(const OscMesh& mesh, const std::vector<double>& f_nodes) {
  if (f_nodes.size() != mesh.nodes.size())
    fail(ErrorKind::InvalidInput, "mesh_integral_real: node count mismatch");
  double acc = 0.0;
  for (std::size_t p = 0; p < mesh.panels(); ++p) {
    double a = 0.5 * (mesh.nodes[2 * p + 2] - mesh.nodes[2 * p]);
    // Simpson on the panel (midpoint is centered by construction).
    acc += a / 3.0 * (f_nodes[2 * p] + 4.0 * f_nodes[2 * p + 1] + f_nodes[2 * p + 2]);
  }
  return acc;
}

complexd trace_fourier_integral(const TimeTrace& h, double omega) {
  const std::size_t n = h.size();
  const double dt = h.dt;
  complexd acc{0.0, 0.0};
  std::size_t j = 0;
  while (j + 2 < n) {
    double c = h.t(j + 1);
    acc += osc_panel_integral(c, dt, h.values[j], h.values[j + 1], h.values[j + 2], 0.0,
                              complexd(0.0, omega));
    j += 2;
  }
  if (j + 2 == n) {
    // Odd interval left over: linear interpolation on the final cell.
    double c = h.t(j) + 0.5 * dt;
    complexd fmid = 0.5 * (h.values[j] + h.values[j + 1]);
    acc += osc_panel_integral(c, 0.5 * dt, h.values[j], fmid, h.values[j + 1], 0.0,
                              complexd(0.0, omega));
  }
  return acc;
}

}  // namespace hlnls
