#include <doctest.h>

#include <cmath>

#include "hlnls/boundary_propagator.hpp"
#include "hlnls/line_propagator.hpp"
#include "hlnls/special_functions.hpp"
#include "oracles.hpp"

using namespace hlnls;

TEST_CASE("faddeeva_w: reference values (mpmath, 18 digits)") {
  struct Ref {
    complexd z, w;
  };
  const Ref refs[] = {
      {{0.0, 0.0}, {1.0, 0.0}},
      {{1.0, 0.0}, {0.367879441171442322, 0.607157705841393729}},
      {{0.0, 1.0}, {0.427583576155807004, 0.0}},
      {{2.0, 1.0}, {0.140239581366277944, 0.222213440179899103}},
      {{-3.0, 0.5}, {0.0371263660546923447, -0.192983755300362088}},
      {{0.7, 0.1}, {0.580698172290743716, 0.497743613207245438}},
      {{10.0, 10.0}, {0.0282794674542324567, 0.0281384332763368956}},
      {{100.0, 1.0}, {0.0000564217791614413347, 0.00564161367014586696}},
      {{5.0, -2.0}, {-0.0406436757146329955, 0.0979873125410644281}},
  };
  for (const auto& r : refs) {
    complexd got = faddeeva_w(r.z);
    CHECK(std::abs(got - r.w) < 1e-12 * std::max(1.0, std::abs(r.w)));
  }
}

TEST_CASE("halfline_kernel: reference values (mpmath, 18 digits)") {
  struct Ref {
    double sigma;
    complexd b, v;
  };
  const Ref refs[] = {
      {0.5, {1.0, 0.0}, {0.676762706690413378, 0.268232953384628454}},
      {1.0, {3.0, 0.0}, {0.307265584164053356, 0.0532538579391036899}},
      {2.0, {1.0, 1.0}, {0.557315303511796973, 0.132878920009774561}},
      {0.03, {0.2, 0.0}, {2.96644433460235907, 1.36739012733961361}},
      {0.7, {1.0, 3.0}, {-0.0601641842044602468, -0.542664090094396789}},
      {0.5, {0.0, 0.0}, {0.886226925452758014, 0.886226925452758014}},
      {0.25, {0.0, -2.0}, {0.0536443356692165476, 0.482894140175925915}},
      {1.0, {0.0, -5.0}, {0.014829725912150606, 0.19673968486260523}},
      {-0.5, {1.0, 0.0}, {0.676762706690413378, -0.268232953384628454}},
      {-0.25, {0.0, -2.0}, {-3.58910845030827997, 0.224313188714693245}},
      {0.4, {0.0, 1.5}, {2.14347139167680126, -2.20617022087282808}},
  };
  for (const auto& r : refs) {
    complexd got = halfline_kernel(r.sigma, r.b);
    CHECK(std::abs(got - r.v) < 1e-11 * std::max(1.0, std::abs(r.v)));
  }
  CHECK(std::abs(halfline_kernel(0.0, complexd(2.0, 0.0)) - complexd(0.5, 0.0)) < 1e-14);
}

TEST_CASE("kernel_Kt: elementary value at t = 0, y = 0") {
  for (double x : {0.5, 1.0, 4.0}) {
    complexd k = kernel_Kt(x, 0.0, 0.0);
    CHECK(std::abs(k - 1.0 / x) < 1e-9 / x);
  }
}

TEST_CASE("kernel_Kt: conjugation symmetry K_t(x,-y,-t) = conj K_t(x,y,t)") {
  for (auto [x, y, t] : {std::tuple{1.0, 0.5, 0.4}, {0.3, -1.0, 1.2}, {2.0, 2.0, 0.15}}) {
    complexd a = kernel_Kt(x, -y, -t);
    complexd b = std::conj(kernel_Kt(x, y, t));
    CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("kernel_Kt: damping as x grows") {
  double prev = 1e300;
  for (double x : {5.0, 10.0, 20.0}) {
    double mag = std::abs(kernel_Kt(x, 0.7, 0.5));
    CHECK(mag < prev);
    CHECK(mag < 1.2 / x);  // |K| <= integral e^{-beta x} dbeta = 1/x
    prev = mag;
  }
}

TEST_CASE("kernel_Kt: agrees with the closed-form kernel (independent routes)") {
  for (auto [x, y, t] : {std::tuple{1.0, 0.0, 0.5}, {0.5, 1.5, 0.25}, {2.0, -2.0, 1.0},
                         {0.0, 1.0, 0.5}, {1.0, 0.0, -0.6}}) {
    complexd quad = kernel_Kt(x, y, t, 1e-9);
    complexd closed = halfline_kernel(t, complexd(std::abs(x), y));
    CHECK(std::abs(quad - closed) < 1e-7 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("kernel_Kt: non-integrable corner is a domain error") {
  CHECK_THROWS_AS(kernel_Kt(0.0, 0.0, 0.0), Error);
}

namespace {

// Analytic compactly supported zero-mean trace: derivative of a C^4 bump.
TimeTrace analytic_he(double T, std::size_t n) {
  return TimeTrace::sample(0.0, T, n, [T](double t) {
    double u = t / T;
    double b = u * (1.0 - u);
    return b > 0.0 ? (1.0 - 2.0 * u) * std::pow(4.0 * b, 4.0) : 0.0;  // d/dt of bump shape
  });
}

complexd oracle_laplace(double T, double omega, std::size_t n) {
  // Simpson quadrature of the analytic integrand, independent of the Filon path.
  std::vector<complexd> f(n);
  double dt = T / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    double t = dt * static_cast<double>(j);
    double u = t / T;
    double b = u * (1.0 - u);
    double val = b > 0.0 ? (1.0 - 2.0 * u) * std::pow(4.0 * b, 4.0) : 0.0;
    f[j] = val * std::polar(1.0, omega * t);
  }
  return simpson(f, dt);
}

}  // namespace

TEST_CASE("boundary_spectra: zero trace gives zero spectra") {
  auto he = TimeTrace::zero(0.0, 2.0, 513);
  auto [phi, psi] = boundary_spectra(he);
  double worst = 0.0;
  for (auto& z : phi.values) worst = std::max(worst, std::abs(z));
  for (auto& z : psi.values) worst = std::max(worst, std::abs(z));
  CHECK(worst == 0.0);
}

TEST_CASE("boundary_spectra: agrees with direct Laplace quadrature at lambda = -i beta^2") {
  const double T = 2.0;
  auto he = analytic_he(T, 8193);
  auto [phi, psi] = boundary_spectra(he);
  const double sqrt2pi = 2.5066282746310005024;
  const complexd c_phi = sqrt2pi / (complexd(0.0, 1.0) * M_PI);
  const double c_psi = -sqrt2pi / M_PI;
  double scale = 0.0;
  for (auto& z : phi.values) scale = std::max(scale, std::abs(z));
  for (std::size_t k = 2; k < phi.size(); k += phi.size() / 7) {
    double b = phi.freqs[k];
    complexd expect_phi = c_phi * oracle_laplace(T, b * b, 40001);
    complexd expect_psi = c_psi * oracle_laplace(T, -b * b, 40001);
    CHECK(std::abs(phi.values[k] - expect_phi) < 1e-8 * scale);
    CHECK(std::abs(psi.values[k] - expect_psi) < 1e-8 * scale);
  }
}

TEST_CASE("boundary_spectra: spectral decay exponent of smooth data >= 3.8") {
  auto h = oracle::bump_trace(1.0, 2049, 2.0);  // C^1 kinks after extension
  auto he = extend_boundary_data(h, SobolevIndex(1.0), 1.0);
  auto [phi, psi] = boundary_spectra(he);
  (void)psi;
  // Envelope fit of log|phi| vs log beta over the outer decade.
  double bmax = phi.freqs.back();
  std::vector<double> lx, ly;
  double lo = std::max(3.0, 0.25 * bmax);
  int bins = 8;
  for (int i = 0; i < bins; ++i) {
    double b0 = lo * std::pow(bmax / lo, i / static_cast<double>(bins));
    double b1 = lo * std::pow(bmax / lo, (i + 1) / static_cast<double>(bins));
    double peak = 0.0, bpk = 0.5 * (b0 + b1);
    for (std::size_t k = 0; k < phi.size(); ++k)
      if (phi.freqs[k] >= b0 && phi.freqs[k] < b1) peak = std::max(peak, std::abs(phi.values[k]));
    if (peak > 0.0) {
      lx.push_back(std::log(bpk));
      ly.push_back(std::log(peak));
    }
  }
  REQUIRE(lx.size() >= 4);
  double n = static_cast<double>(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(-slope >= 3.8);
}

namespace {

// Synthetic smooth spectrum with a high-order zero at beta = 0 (keeps the
// synthesized function's tails below 1e-10 inside |x| <= 40).
SpectralFunction synthetic_phi_hat(double theta) {
  OscMesh mesh = build_halfline_mesh(8.0, 1.0, 0.5, theta);
  std::vector<complexd> v(mesh.nodes.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    double b = mesh.nodes[k];
    v[k] = std::pow(b, 8.0) * std::exp(-b * b) * complexd(1.0, 0.3);
  }
  return SpectralFunction(mesh.nodes, std::move(v), kUnitaryAngularConvention);
}

}  // namespace

TEST_CASE("eval_Wb1: zero spectrum, and t = 0 equals the synthesis") {
  Grid1D grid(-40.0, 40.0, 1025);
  auto phi_hat = synthetic_phi_hat(0.01);
  SpectralFunction zero(phi_hat.freqs,
                        std::vector<complexd>(phi_hat.size(), complexd{0.0, 0.0}),
                        kUnitaryAngularConvention);
  CHECK(eval_Wb1(zero, grid, 0.4).max_abs() == 0.0);

  auto a = eval_Wb1(phi_hat, grid, 0.0);
  auto b = spectrum_to_function(phi_hat, grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.n; ++j)
    worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
  CHECK(worst < 1e-14);
}

TEST_CASE("eval_Wb1: quadrature path equals the FFT free-evolution path to 1e-10") {
  Grid1D grid(-40.0, 40.0, 1025);
  auto phi_hat = synthetic_phi_hat(0.0015);
  auto phi = eval_Wb1(phi_hat, grid, 0.0);
  double scale = phi.max_abs();
  for (double t : {0.3, 1.0}) {
    auto direct = eval_Wb1(phi_hat, grid, t);
    auto fft_path = free_propagate(phi, t);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n; ++j)
      worst = std::max(worst, std::abs(direct.values[j] - fft_path.values[j]));
    CHECK(worst < 1e-10 * scale);
  }
}

TEST_CASE("eval_Wb1: finite-difference PDE residual is small on smooth data") {
  Grid1D grid(-10.0, 10.0, 513);
  auto phi_hat = synthetic_phi_hat(0.01);
  double t = 0.5, dt = 5e-4;
  auto um = eval_Wb1(phi_hat, grid, t - dt);
  auto u0 = eval_Wb1(phi_hat, grid, t);
  auto up = eval_Wb1(phi_hat, grid, t + dt);
  double worst = 0.0;
  const complexd i_unit{0.0, 1.0};
  for (std::size_t j = 1; j + 1 < grid.n; ++j) {
    complexd ut = (up.values[j] - um.values[j]) / (2.0 * dt);
    complexd uxx = (u0.values[j + 1] - 2.0 * u0.values[j] + u0.values[j - 1]) /
                   (grid.dx * grid.dx);
    worst = std::max(worst, std::abs(i_unit * ut + uxx));
  }
  CHECK(worst < 2e-2 * u0.max_abs());  // O(dx^2 + dt^2) on these grids
}

TEST_CASE("eval_Wb2: zero spectrum and exponential damping in x") {
  auto he = analytic_he(2.0, 2049);
  auto [phi_hat, psi_hat] = boundary_spectra(he);
  (void)phi_hat;
  SpectralFunction zero(psi_hat.freqs,
                        std::vector<complexd>(psi_hat.size(), complexd{0.0, 0.0}),
                        kUnitaryAngularConvention);
  Grid1D grid(0.0, 20.0, 257);
  CHECK(eval_Wb2(zero, grid, 0.3).max_abs() == 0.0);

  auto field = eval_Wb2(psi_hat, grid, 0.3);
  double m5 = std::abs(field.values[grid.index_of(5.0)]);
  double m10 = std::abs(field.values[grid.index_of(10.0)]);
  double m20 = std::abs(field.values[grid.index_of(20.0)]);
  CHECK(m10 < m5);
  CHECK(m20 < m10);
}

TEST_CASE("eval_Wb2: cross-check against the kernel composition") {
  const double T = 1.0;
  auto h = oracle::bump_trace(T, 1025, 3.0);
  auto he = extend_boundary_data(h, SobolevIndex(1.0), T);
  auto [phi_hat, psi_hat] = boundary_spectra(he, {.theta = 0.02});
  (void)phi_hat;

  // psi function on a wide grid.
  Grid1D wide(-60.0, 60.0, 12289);
  auto psi = spectrum_to_function(psi_hat, wide);

  Grid1D probe(0.25, 3.0, 12);  // coarse x sample set
  for (double t : {0.2, 0.6}) {
    auto wb2 = eval_Wb2(psi_hat, probe, t);
    for (double x : {0.25, 1.0, 3.0}) {
      // integral K_t(x, y) psi(y) dy / (2 pi)
      std::vector<complexd> f(wide.n);
      for (std::size_t j = 0; j < wide.n; ++j)
        f[j] = kernel_Kt(x, wide.x(j), t, 1e-9) * psi.values[j];
      complexd composed = simpson(f, wide.dx) / (2.0 * M_PI);
      complexd direct = wb2.values[probe.index_of(x)];
      CHECK(std::abs(direct - composed) < 1e-6);
    }
  }
}

TEST_CASE("eval_Wb2: mesh built for short horizons rejects far evolution times") {
  auto he = analytic_he(1.0, 1025);
  auto [phi_hat, psi_hat] = boundary_spectra(he, {.theta = 0.3, .t_phase = 0.1});
  (void)phi_hat;
  Grid1D grid(0.0, 10.0, 65);
  CHECK_THROWS_AS(eval_Wb2(psi_hat, grid, 50.0, 1e-7), Error);
}

namespace {

TimeSlab wb_total(const TimeTrace& h, double s, const Grid1D& grid, std::size_t nt,
                  const BoundaryFieldOptions& opt = {}) {
  std::vector<double> times(nt);
  double dt = h.dt;
  for (std::size_t i = 0; i < nt; ++i) times[i] = dt * static_cast<double>(i);
  return boundary_propagate(h, SobolevIndex(s), grid, times, opt);
}

}  // namespace

TEST_CASE("boundary_propagate: zero data gives the zero field") {
  Grid1D grid(0.0, 10.0, 65);
  auto field = wb_total(TimeTrace::zero(0.0, 1.0, 129), 1.0, grid, 65);
  CHECK(field.slices.back().max_abs() == 0.0);
}

TEST_CASE("boundary_propagate: conv path matches eval_Wb1/eval_Wb2 routes") {
  const double T = 1.0;
  const std::size_t n = 1025;
  auto h = oracle::bump_trace(T, n, 3.0);
  auto he = extend_boundary_data(h, SobolevIndex(1.0), T);
  auto [phi_hat, psi_hat] = boundary_spectra(he, {.theta = 0.015});

  Grid1D grid(0.0, 6.0, 61);
  std::vector<double> times;
  for (int i = 0; i <= 4; ++i) times.push_back(0.25 * i * T);
  // Align times to the trace lattice.
  for (auto& t : times) t = std::round(t / he.dt) * he.dt;
  BoundaryFieldOptions opt;
  opt.phi_theta = 0.015;
  opt.pad_factor = 8.0;  // phi has x^{-3} tails; keep the wraparound below 1e-6
  auto w1 = boundary_field_wb1(he, grid, times, opt);
  auto w2 = boundary_field_wb2(he, grid, times, opt);
  for (std::size_t i = 1; i < times.size(); ++i) {
    auto q1 = eval_Wb1(phi_hat, grid, times[i]);
    auto q2 = eval_Wb2(psi_hat, grid, times[i]);
    double worst1 = 0.0, worst2 = 0.0;
    for (std::size_t j = 0; j < grid.n; ++j) {
      worst1 = std::max(worst1, std::abs(w1.slices[i].values[j] - q1.values[j]));
      worst2 = std::max(worst2, std::abs(w2.slices[i].values[j] - q2.values[j]));
    }
    CHECK(worst1 < 1e-6);
    CHECK(worst2 < 1e-6);
  }
}

TEST_CASE("boundary_propagate: Neumann trace, zero initial state, PDE residual") {
  const double T = 1.0;
  const std::size_t nh = 513;
  auto h = oracle::bump_trace(T, nh, 2.0);
  Grid1D grid(0.0, 12.0, 257);
  auto field = wb_total(h, 1.0, grid, nh);

  // (a) d/dx at x = 0 reproduces h.
  double err2 = 0.0, scale2 = 0.0;
  for (std::size_t i = 0; i < field.nt(); ++i) {
    complexd del = oracle::ddx_left(field.slices[i]) - h.values[i];
    double w = (i == 0 || i + 1 == field.nt()) ? 0.5 : 1.0;
    err2 += w * std::norm(del) * field.dt();
    scale2 += w * std::norm(h.values[i]) * field.dt();
  }
  CHECK(std::sqrt(err2) < 2e-3 * std::sqrt(scale2));

  // (b) u(x, 0) vanishes.
  CHECK(field.slices.front().l2_norm() < 1e-6 * std::sqrt(scale2));

  // (c) interior PDE residual is small relative to the field scale.
  double worst = 0.0, fscale = 0.0;
  for (std::size_t i = 0; i < field.nt(); ++i) fscale = std::max(fscale, field.slices[i].max_abs());
  for (std::size_t i = 4; i < field.nt() - 1; i += 37)
    for (std::size_t j = 1; j + 1 < grid.n; j += 11)
      worst = std::max(worst, std::abs(oracle::pde_residual(field, j, i)));
  CHECK(worst < 0.05 * fscale);
}

TEST_CASE("boundary_propagate: trace error converges at order >= 2") {
  const double T = 1.0;
  double prev = 0.0;
  int level = 0;
  for (std::size_t nh : {129u, 257u, 513u}) {
    Grid1D grid(0.0, 12.0, (nh - 1) / 2 + 1);  // simultaneous (dx, dt) halving
    auto h = oracle::bump_trace(T, nh, 2.0);
    auto field = wb_total(h, 1.0, grid, nh);
    double err2 = 0.0;
    for (std::size_t i = 0; i < field.nt(); ++i) {
      complexd del = oracle::ddx_left(field.slices[i]) - h.values[i];
      double w = (i == 0 || i + 1 == field.nt()) ? 0.5 : 1.0;
      err2 += w * std::norm(del) * field.dt();
    }
    double err = std::sqrt(err2);
    MESSAGE("trace L2 error at level ", level, ": ", err);
    if (level > 0) {
      double order = std::log2(prev / err);
      CHECK(order >= 1.9);
    }
    prev = err;
    ++level;
  }
}

TEST_CASE("boundary W_{b,2}: space- and time-trace bound surrogates") {
  // sup_t ||Wb2 h_e||_{H^s} and sup_x ||Wb2(x,.)||_{H^{(2s+1)/4}(0,T)}
  // against (1+T) ||h||_{H^{(2s-1)/4}(0,T)}; bounded across the family and T.
  const double s = 1.0;
  double worst_space = 0.0, worst_time = 0.0;
  for (double T : {0.5, 1.0, 2.0}) {
    for (double a : {2.0, 3.0}) {
      std::size_t nh = 257;
      auto h = oracle::bump_trace(T, nh, a);
      auto he = extend_boundary_data(h, SobolevIndex(s), T);
      Grid1D grid(0.0, 12.0, 129);
      std::vector<double> times(nh);
      for (std::size_t i = 0; i < nh; ++i) times[i] = h.dt * static_cast<double>(i);
      auto w2 = boundary_field_wb2(he, grid, times);
      double den = (1.0 + T) * sobolev_norm_interval(h, (2.0 * s - 1.0) / 4.0);
      double sup_space = 0.0;
      for (auto& sl : w2.slices)
        sup_space = std::max(sup_space, sobolev_norm_halfline(sl, SobolevIndex(s), 1.0));
      double sup_time = 0.0;
      for (double x : {0.0, 0.2, 0.5, 1.0, 2.0, 5.0})
        sup_time = std::max(sup_time,
                            sobolev_norm_interval(w2.trace_at(std::round(x / grid.dx) * grid.dx),
                                                  (2.0 * s + 1.0) / 4.0));
      worst_space = std::max(worst_space, sup_space / den);
      worst_time = std::max(worst_time, sup_time / den);
    }
  }
  CHECK(worst_space < 10.0);
  CHECK(worst_time < 10.0);
}

TEST_CASE("Lemma 2.3 surrogate: ||phi_he||_{H^s} <= C ||H||_{H^{(2s+3)/4}}") {
  const double s = 1.0;
  double worst = 0.0;
  for (double a : {2.0, 3.0, 4.0}) {
    auto h = oracle::bump_trace(1.0, 513, a);
    auto he = extend_boundary_data(h, SobolevIndex(s), 1.0);
    auto H = antiderivative(he);
    auto [phi_hat, psi_hat] = boundary_spectra(he, {.theta = 0.1});
    (void)psi_hat;
    double num = sobolev_norm_halfline_spectrum(phi_hat, s);
    Grid1D g(H.t_min, H.t_max, H.size());
    double den = sobolev_norm_line(GridFunction(g, H.values), SobolevIndex((2 * s + 3) / 4.0), 1e-2);
    worst = std::max(worst, num / den);
  }
  CHECK(worst < 5.0);
}
