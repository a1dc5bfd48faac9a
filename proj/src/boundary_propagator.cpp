#include "hlnls/boundary_propagator.hpp"

#include <algorithm>
#include <cmath>

#include "hlnls/parallel.hpp"
#include "hlnls/special_functions.hpp"

namespace hlnls {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kPi = 3.14159265358979323846;
const complexd kExpIPi4{M_SQRT1_2, M_SQRT1_2};

void require_extended_trace(const TimeTrace& h_e, const char* who) {
  if (std::abs(h_e.t_min) > 1e-12)
    fail(ErrorKind::InvalidInput, std::string(who) + ": extended trace must start at t = 0");
  double scale = std::max(h_e.max_abs(), 1e-300);
  if (std::abs(h_e.values.back()) > 1e-6 * scale)
    fail(ErrorKind::InvalidInput, std::string(who) + ": trace is not compactly supported");
}

void require_zero_mean(const TimeTrace& h_e, const char* who) {
  double l1 = 0.0;
  complexd mean{0.0, 0.0};
  for (std::size_t j = 0; j < h_e.size(); ++j) {
    double w = (j == 0 || j + 1 == h_e.size()) ? 0.5 : 1.0;
    l1 += w * std::abs(h_e.values[j]);
    mean += w * h_e.values[j];
  }
  if (std::abs(mean) > 1e-6 * std::max(l1, 1e-300))
    fail(ErrorKind::InvalidInput, std::string(who) + ": extended trace must have zero mean");
}

}  // namespace

namespace {

// Shared mesh + node evaluation for the two boundary spectra.
OscMesh spectra_mesh(const TimeTrace& h_e, const BoundarySpectraOptions& o) {
  // beta_max from the decay of |hhat_e| at the squared argument.
  double peak = 0.0;
  {
    double om = 0.0, dom = std::max(0.5, 2.0 / h_e.t_max);
    for (int k = 0; k < 64; ++k) {
      peak = std::max(peak, std::abs(trace_fourier_integral(h_e, om)));
      om += dom;
    }
  }
  double beta_max = 2.0;
  while (beta_max < o.beta_cap) {
    double mag = std::max(std::abs(trace_fourier_integral(h_e, beta_max * beta_max)),
                          std::abs(trace_fourier_integral(h_e, -beta_max * beta_max)));
    if (mag < o.tail_drop * std::max(peak, 1e-300)) break;
    beta_max *= 1.25;
  }
  beta_max = std::min(beta_max, o.beta_cap);
  const double t_phase = o.t_phase > 0.0 ? o.t_phase : h_e.t_max;
  return build_halfline_mesh(beta_max, t_phase, h_e.t_max, o.theta);
}

SpectralFunction spectrum_on_mesh(const TimeTrace& h_e, const OscMesh& mesh, complexd scale,
                                  double sign) {
  std::vector<complexd> nu(mesh.nodes.size());
  parallel_for(nu.size(), [&](std::size_t k) {
    double b2 = sign * mesh.nodes[k] * mesh.nodes[k];
    nu[k] = scale * trace_fourier_integral(h_e, b2);
  });
  return SpectralFunction(mesh.nodes, std::move(nu), kUnitaryAngularConvention);
}

SpectralFunction phi_spectrum(const TimeTrace& h_e, const BoundarySpectraOptions& o) {
  OscMesh mesh = spectra_mesh(h_e, o);
  return spectrum_on_mesh(h_e, mesh, kSqrt2Pi / (complexd(0.0, 1.0) * kPi), +1.0);
}

}  // namespace

std::pair<SpectralFunction, SpectralFunction> boundary_spectra(const TimeTrace& h_e,
                                                               const BoundarySpectraOptions& o) {
  require_extended_trace(h_e, "boundary_spectra");
  require_zero_mean(h_e, "boundary_spectra");
  OscMesh mesh = spectra_mesh(h_e, o);
  auto phi_hat = spectrum_on_mesh(h_e, mesh, kSqrt2Pi / (complexd(0.0, 1.0) * kPi), +1.0);
  auto psi_hat = spectrum_on_mesh(h_e, mesh, complexd(-kSqrt2Pi / kPi, 0.0), -1.0);
  return {std::move(phi_hat), std::move(psi_hat)};
}

namespace {

OscMesh mesh_of(const SpectralFunction& sf, const char* who) {
  if (sf.size() < 3 || sf.size() % 2 == 0 || sf.freqs.front() != 0.0)
    fail(ErrorKind::InvalidInput, std::string(who) + ": expects half-line panel spectrum");
  OscMesh m;
  m.nodes = sf.freqs;
  return m;
}

// Same as osc_mesh_integral but with midpoints replaced by the endpoint mean,
// i.e. piecewise-linear data; the difference against the quadratic result is
// the embedded convergence estimate.
complexd osc_mesh_integral_linear(const OscMesh& mesh, const std::vector<complexd>& f,
                                  double t_coeff, complexd w) {
  complexd acc{0.0, 0.0};
  for (std::size_t p = 0; p < mesh.panels(); ++p) {
    double e0 = mesh.nodes[2 * p], e1 = mesh.nodes[2 * p + 2];
    double c = mesh.nodes[2 * p + 1], a = 0.5 * (e1 - e0);
    acc += osc_panel_integral(c, a, f[2 * p], 0.5 * (f[2 * p] + f[2 * p + 2]), f[2 * p + 2],
                              t_coeff, w);
  }
  return acc;
}

}  // namespace

GridFunction eval_Wb1(const SpectralFunction& phi_hat, const Grid1D& grid, double t) {
  OscMesh mesh = mesh_of(phi_hat, "eval_Wb1");
  std::vector<complexd> v(grid.n);
  parallel_for(grid.n, [&](std::size_t j) {
    double x = grid.x(j);
    v[j] = osc_mesh_integral(mesh, phi_hat.values, -t, complexd(0.0, x)) / kSqrt2Pi;
  });
  return GridFunction(grid, std::move(v));
}

GridFunction eval_Wb2(const SpectralFunction& psi_hat, const Grid1D& grid, double t, double tol) {
  OscMesh mesh = mesh_of(psi_hat, "eval_Wb2");
  std::vector<complexd> v(grid.n);
  double scale = 0.0;
  for (const auto& z : psi_hat.values) scale = std::max(scale, std::abs(z));
  scale = std::max(scale, 1e-300);
  std::vector<double> est(grid.n, 0.0);
  parallel_for(grid.n, [&](std::size_t j) {
    double x = std::abs(grid.x(j));  // |x| extension off the half-line
    complexd w(-x, 0.0);
    complexd quad = osc_mesh_integral(mesh, psi_hat.values, t, w);
    complexd lin = osc_mesh_integral_linear(mesh, psi_hat.values, t, w);
    v[j] = quad / kSqrt2Pi;
    est[j] = std::abs(quad - lin) / kSqrt2Pi;
  });
  double worst = *std::max_element(est.begin(), est.end());
  if (worst > tol * scale)
    fail(ErrorKind::Quadrature, "eval_Wb2: embedded convergence estimate " +
                                    std::to_string(worst) + " exceeds tolerance");
  return GridFunction(grid, std::move(v));
}

GridFunction spectrum_to_function(const SpectralFunction& fhat, const Grid1D& grid) {
  OscMesh mesh = mesh_of(fhat, "spectrum_to_function");
  std::vector<complexd> v(grid.n);
  parallel_for(grid.n, [&](std::size_t j) {
    v[j] = osc_mesh_integral(mesh, fhat.values, 0.0, complexd(0.0, grid.x(j))) / kSqrt2Pi;
  });
  return GridFunction(grid, std::move(v));
}

complexd kernel_Kt(double x, double y, double t, double tol) {
  const double ax = std::abs(x);
  if (t == 0.0 && ax == 0.0 && y == 0.0)
    fail(ErrorKind::Domain, "kernel_Kt: not integrable at t = 0, x = 0, y = 0");
  const complexd w(-ax, -y);
  const complexd two_it(0.0, 2.0 * t);

  auto tail = [&](double B, complexd& value, double& remainder) {
    // Three integration-by-parts terms of the tail integral from B.
    complexd dphi = two_it * B + w;
    if (std::abs(dphi) < 1e-12) {
      value = complexd{0.0, 0.0};
      remainder = 1e300;
      return;
    }
    complexd E = std::exp(complexd(0.0, t * B * B) + w * B);
    complexd inv = 1.0 / dphi;
    complexd term = inv + two_it * inv * inv * inv +
                    3.0 * two_it * two_it * inv * inv * inv * inv * inv;
    value = -E * term;
    double at = std::abs(two_it);
    if (at > 0.0)
      remainder = 15.0 * at * at * at * std::abs(E) / (5.0 * std::pow(at * B, 5.0) * B);
    else
      remainder = 0.0;  // pure exponential: the one-term tail is exact
  };

  double B = std::max(8.0, 4.0 / std::max(ax, 0.05));
  complexd tail_v{0.0, 0.0};
  double rem = 1e300;
  for (int it = 0; it < 60; ++it) {
    double decay = ax > 0.0 ? std::exp(-B * ax) / std::max(ax, 1e-12) : 1e300;
    tail(B, tail_v, rem);
    if (std::min(decay, rem) < 0.25 * tol) break;
    B *= 1.3;
    if (B > 1e5) fail(ErrorKind::Quadrature, "kernel_Kt: tail does not converge");
  }

  auto body = [&](double theta) {
    OscMesh mesh = build_halfline_mesh(B, std::abs(t), 0.0, theta);
    // The e^{-i y beta} factor folds into w (linear phase, integrated
    // exactly); the interpolated data is identically 1.
    std::vector<complexd> ones(mesh.nodes.size(), complexd{1.0, 0.0});
    return osc_mesh_integral(mesh, ones, t, w);
  };
  // Refine the mesh until two consecutive levels agree within the tolerance.
  double theta = 0.05;
  complexd prev = body(theta);
  complexd curr = prev;
  bool converged = false;
  for (int level = 0; level < 10; ++level) {
    theta *= 0.5;
    curr = body(theta);
    if (std::abs(curr - prev) < std::max(3.0 * tol, 1e-14)) {
      converged = true;
      break;
    }
    prev = curr;
  }
  if (!converged) fail(ErrorKind::Quadrature, "kernel_Kt: quadrature did not converge");
  double decay = ax > 0.0 ? std::exp(-B * ax) / std::max(ax, 1e-12) : 1e300;
  return curr + (rem < decay ? tail_v : complexd{0.0, 0.0});
}

namespace {

// Cubic Lagrange interpolation of a uniform-grid trace at arbitrary t.
complexd interp_trace(const TimeTrace& h, double t) {
  double p = (t - h.t_min) / h.dt;
  auto n = static_cast<long long>(h.size());
  auto base = static_cast<long long>(std::floor(p)) - 1;
  base = std::max<long long>(0, std::min(base, n - 4));
  double s = p - static_cast<double>(base);
  const complexd* v = h.values.data() + base;
  double l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
  double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
  double l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
  double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
  return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
}

// dir = +1: I(x, t) = integral h_e(tau) G(t - tau, b) dtau      (W_{b,2} shape)
// dir = -1: I(x, t) = integral h_e(tau) G(tau - t, b) dtau      (W_{b,1} shape)
// Evaluated at every requested time index (times = j * dt on the trace
// lattice). Smooth region by Simpson on the trace grid; the square-root
// window around tau = t by Gauss-Legendre after sigma = zeta^2 substitution.
std::vector<complexd> convolve_kernel(const TimeTrace& h_e, const std::vector<double>& times,
                                      complexd b, int dir, const BoundaryFieldOptions& opt) {
  const double dt = h_e.dt;
  const auto M = static_cast<long long>(h_e.size()) - 1;  // trace cells
  const auto nt = static_cast<long long>(times.size());
  const long long W = std::max(4, opt.window_cells);

  // Kernel table on the lattice sigma = d * dt; only the d-range the requested
  // times can touch (d = jc - m with m in [0, M]). Index shift: table[d + M].
  long long jc_min = M, jc_max = 0;
  for (double t : times) {
    auto jc = static_cast<long long>(std::llround(t / dt));
    jc_min = std::min(jc_min, jc);
    jc_max = std::max(jc_max, jc);
  }
  std::vector<complexd> table(2 * static_cast<std::size_t>(M) + 2);
  for (long long d = jc_min - M; d <= jc_max; ++d) {
    double sigma = static_cast<double>(dir) * static_cast<double>(d) * dt;
    table[static_cast<std::size_t>(d + M)] =
        (d == 0) ? complexd{0.0, 0.0} : halfline_kernel(sigma, b);
  }

  const auto& gl = gauss_legendre(static_cast<std::size_t>(opt.gl_points));
  const double full_delta = static_cast<double>(W) * dt;
  const double sq = std::sqrt(full_delta);
  // Window kernels at the standard nodes (full windows), reused across t.
  // before(tau < t): sigma_dir = dir * (t - tau) = dir * zeta^2
  // after (tau > t): sigma_dir = -dir * zeta^2
  std::vector<complexd> wf_before(gl.nodes.size()), wf_after(gl.nodes.size());
  auto window_kernel = [&](double zeta, int side) {
    double sigma = static_cast<double>(dir * side) * zeta * zeta;
    return 2.0 * zeta * halfline_kernel(sigma, b);
  };
  for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
    double zeta = 0.5 * sq * (gl.nodes[g] + 1.0);
    wf_before[g] = window_kernel(zeta, +1);
    wf_after[g] = window_kernel(zeta, -1);
  }

  // Pure-Simpson weight for index i in 0..m (m even by construction below).
  auto simpson_w = [](long long i, long long m) {
    if (i == 0 || i == m) return 1.0 / 3.0;
    return (i % 2 != 0) ? 4.0 / 3.0 : 2.0 / 3.0;
  };

  std::vector<complexd> out(times.size());
  for (long long j = 0; j < nt; ++j) {
    double t = times[static_cast<std::size_t>(j)];
    auto jc = static_cast<long long>(std::llround(t / dt));
    if (jc < 0 || jc > M || std::abs(t - static_cast<double>(jc) * dt) > 1e-9 * std::max(1.0, dt))
      fail(ErrorKind::Domain, "boundary field: times must lie on the trace lattice");

    complexd acc{0.0, 0.0};
    // Left smooth region [0, jc - WL] with an even cell count.
    long long WL = W + (((jc - W) % 2) != 0 ? 1 : 0);
    long long jl = jc - WL;
    if (jl >= 2) {
      for (long long m = 0; m <= jl; ++m)
        acc += simpson_w(m, jl) * dt * h_e.values[static_cast<std::size_t>(m)] *
               table[static_cast<std::size_t>(jc - m + M)];
    } else {
      WL = jc;  // window absorbs everything to the left
    }
    // Right smooth region [jc + WR, M] with an even cell count.
    long long WR = W + (((M - jc - W) % 2) != 0 ? 1 : 0);
    long long jr = jc + WR;
    if (jr <= M - 2) {
      for (long long m = jr; m <= M; ++m)
        acc += simpson_w(m - jr, M - jr) * dt * h_e.values[static_cast<std::size_t>(m)] *
               table[static_cast<std::size_t>(jc - m + M)];
    } else {
      WR = M - jc;
    }

    // Windows: tau in [t - WL dt, t] and [t, t + WR dt], sigma = zeta^2.
    if (WL > 0) {
      double delta = static_cast<double>(WL) * dt;
      double sqd = std::sqrt(delta);
      bool std_window = std::abs(delta - full_delta) < 1e-14;
      for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
        double zeta = 0.5 * sqd * (gl.nodes[g] + 1.0);
        complexd wf = std_window ? wf_before[g] : window_kernel(zeta, +1);
        acc += 0.5 * sqd * gl.weights[g] * interp_trace(h_e, t - zeta * zeta) * wf;
      }
    }
    if (WR > 0) {
      double delta = static_cast<double>(WR) * dt;
      double sqd = std::sqrt(delta);
      bool std_window = std::abs(delta - full_delta) < 1e-14;
      for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
        double zeta = 0.5 * sqd * (gl.nodes[g] + 1.0);
        complexd wf = std_window ? wf_after[g] : window_kernel(zeta, -1);
        acc += 0.5 * sqd * gl.weights[g] * interp_trace(h_e, t + zeta * zeta) * wf;
      }
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace

TimeSlab boundary_field_wb1(const TimeTrace& h_e, const Grid1D& grid,
                            const std::vector<double>& times, const BoundaryFieldOptions& o) {
  // The W_{b,1} kernel carries stationary-phase radiation (oscillations like
  // exp(i x^2 / (4 |t - tau|))) that a tau-side quadrature cannot resolve, so
  // the field is assembled as the free evolution of phi_{h_e}: synthesize phi
  // once from the graded-mesh spectrum (panel quadrature integrates the
  // e^{i beta x} phase exactly) and apply the spectral multiplier per time.
  // The synthesis grid is padded: phi has algebraic x^{-3} tails.
  require_extended_trace(h_e, "boundary_field_wb1");
  const double span = std::max({std::abs(grid.x_min), std::abs(grid.x_max), 2.0});
  const auto pad_cells = static_cast<std::size_t>(std::ceil(o.pad_factor * span / grid.dx));
  const double X = static_cast<double>(pad_cells) * grid.dx;
  Grid1D padded(-X, X, 2 * pad_cells + 1);
  const std::size_t offset = padded.index_of(grid.x_min);

  BoundarySpectraOptions so;
  so.theta = o.phi_theta;
  so.t_phase = h_e.t_max;
  SpectralFunction phi_hat = phi_spectrum(h_e, so);
  // The spectral step truncates phi_hat at the grid Nyquist frequency; refuse
  // only when that discards a non-negligible share of the content.
  const double nyq = M_PI / grid.dx;
  if (phi_hat.freqs.back() > nyq) {
    double total = 0.0, lost = 0.0;
    for (std::size_t k = 0; k < phi_hat.size(); ++k) {
      double m = std::abs(phi_hat.values[k]);
      total += m;
      if (phi_hat.freqs[k] > nyq) lost += m;
    }
    if (lost > 1e-3 * std::max(total, 1e-300))
      fail(ErrorKind::Resolution, "boundary_field_wb1: grid Nyquist truncates the spectrum");
  }
  const GridFunction phi = spectrum_to_function(phi_hat, padded);

  LineSpectrum sp = analyze(phi);
  std::vector<GridFunction> slices;
  slices.reserve(times.size());
  for (double t : times) {
    LineSpectrum st = sp;
    st.apply_multiplier([t](double b) { return std::polar(1.0, -b * b * t); });
    GridFunction full = synthesize(st);
    std::vector<complexd> v(full.values.begin() + static_cast<long>(offset),
                            full.values.begin() + static_cast<long>(offset + grid.n));
    slices.emplace_back(grid, std::move(v));
  }
  return TimeSlab(times, std::move(slices));
}

TimeSlab boundary_field_wb2(const TimeTrace& h_e, const Grid1D& grid,
                            const std::vector<double>& times, const BoundaryFieldOptions& o) {
  require_extended_trace(h_e, "boundary_field_wb2");
  std::vector<std::vector<complexd>> columns(grid.n);
  const double c2 = -1.0 / kPi;
  parallel_for(grid.n, [&](std::size_t j) {
    auto col = convolve_kernel(h_e, times, complexd(std::abs(grid.x(j)), 0.0), +1, o);
    for (auto& z : col) z *= c2;
    columns[j] = std::move(col);
  });
  std::vector<GridFunction> slices;
  slices.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<complexd> v(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) v[j] = columns[j][i];
    slices.emplace_back(grid, std::move(v));
  }
  return TimeSlab(times, std::move(slices));
}

TimeSlab boundary_propagate(const TimeTrace& h, SobolevIndex s, const Grid1D& grid,
                            const std::vector<double>& times, const BoundaryFieldOptions& o) {
  TimeTrace h_e = extend_boundary_data(h, s, h.t_max);
  TimeSlab w1 = boundary_field_wb1(h_e, grid, times, o);
  TimeSlab w2 = boundary_field_wb2(h_e, grid, times, o);
  std::vector<GridFunction> slices;
  slices.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<complexd> v(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j)
      v[j] = w1.slices[i].values[j] + w2.slices[i].values[j];
    slices.emplace_back(grid, std::move(v));
  }
  return TimeSlab(times, std::move(slices));
}

}  // namespace hlnls
