#include <doctest.h>

#include <cmath>

#include "hlnls/fd_oracle.hpp"
#include "oracles.hpp"

using namespace hlnls;

namespace {

complexd free_gaussian(double x, double t) {
  complexd denom{1.0, 4.0 * t};
  return std::exp(-x * x / denom) / std::sqrt(denom);
}

NlsProblem linear_gaussian(const Grid1D& g, double T = 0.1) {
  NlsProblem prob;
  prob.s = SobolevIndex(1.0);
  prob.p = 2.0;
  prob.r = 2.0;
  prob.k = 0.0;
  prob.lambda = 0.0;
  prob.T = T;
  prob.u0 = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
  prob.mode = BoundaryMode::ClosedLoop;  // lambda = 0: homogeneous Neumann
  return prob;
}

}  // namespace

TEST_CASE("crank_nicolson: zero data with zero boundary stays zero") {
  Grid1D g(0.0, 18.0, 256);
  NlsProblem prob = linear_gaussian(g);
  prob.mode = BoundaryMode::OpenLoop;
  prob.h = TimeTrace::zero(0.0, prob.T, 101);
  prob.u0 = GridFunction::zero(g);
  auto res = crank_nicolson_solve(prob, g.dx, 1e-3);
  CHECK(res.slab.slices.back().max_abs() == 0.0);
}

TEST_CASE("crank_nicolson: second-order convergence to the free gaussian") {
  double prev = 0.0;
  int level = 0;
  for (std::size_t n : {129u, 257u}) {
    Grid1D g(0.0, 18.0, n);
    NlsProblem prob = linear_gaussian(g);
    double dt = 0.2 * g.dx;  // halve dt with dx
    dt = prob.T / std::ceil(prob.T / dt);
    auto res = crank_nicolson_solve(prob, g.dx, dt);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
      worst = std::max(worst,
                       std::abs(res.slab.slices.back().values[j] - free_gaussian(g.x(j), prob.T)));
    if (level > 0) {
      double order = std::log2(prev / worst);
      MESSAGE("observed order ", order);
      CHECK(order >= 1.9);
    }
    prev = worst;
    ++level;
  }
}

TEST_CASE("crank_nicolson: discrete mass conserved for real k, real lambda") {
  Grid1D g(0.0, 18.0, 256);
  NlsProblem prob;
  prob.s = SobolevIndex(2.0);
  prob.p = 2.0;
  prob.r = 2.0;
  prob.k = 1.0;
  prob.lambda = 1.0;
  prob.T = 0.1;
  prob.u0 = GridFunction::sample(g, [](double x) { return std::exp(-x); });
  prob.mode = BoundaryMode::ClosedLoop;
  auto res = crank_nicolson_solve(prob, g.dx, 1e-3);
  double m0 = res.mass_history.front();
  double worst = 0.0;
  for (double m : res.mass_history) worst = std::max(worst, std::abs(m - m0) / m0);
  // 1e-6 relative per unit time; the run spans T = 0.1.
  CHECK(worst < 1e-6 * std::max(prob.T, 1.0));
}

TEST_CASE("crank_nicolson: rejects dt > dx and mismatched dx") {
  Grid1D g(0.0, 18.0, 256);
  NlsProblem prob = linear_gaussian(g);
  CHECK_THROWS_AS(crank_nicolson_solve(prob, g.dx, 1.0), Error);
  CHECK_THROWS_AS(crank_nicolson_solve(prob, 2.0 * g.dx, 1e-3), Error);
}
