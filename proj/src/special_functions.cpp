#include "hlnls/special_functions.hpp"

#include <array>
#include <cmath>

namespace hlnls {

namespace {

constexpr int kWeidemanN = 48;
constexpr double kSqrtPi = 1.7724538509055160273;

struct WeidemanTable {
  double L;
  std::array<double, kWeidemanN> a;  // polynomial coefficients, highest degree first

  WeidemanTable() {
    const int N = kWeidemanN;
    const int M = 2 * N;
    const int M2 = 2 * M;
    L = std::sqrt(N / std::sqrt(2.0));
    // Sample f(theta) = exp(-t^2)(L^2 + t^2), t = L tan(theta/2), and take the
    // real DFT coefficients of the fftshifted sequence (direct O(M2^2) sum).
    std::vector<double> F(M2, 0.0);
    for (int k = -M + 1; k <= M - 1; ++k) {
      double theta = k * M_PI / M;
      double t = L * std::tan(theta / 2.0);
      F[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (L * L + t * t);
    }
    // fftshift: rotate by M.
    std::vector<double> Fs(M2);
    for (int j = 0; j < M2; ++j) Fs[j] = F[(j + M) % M2];
    std::vector<double> c(N + 1, 0.0);
    for (int k = 0; k <= N; ++k) {
      double re = 0.0;
      for (int j = 0; j < M2; ++j) re += Fs[j] * std::cos(2.0 * M_PI * j * k / M2);
      c[k] = re / M2;
    }
    for (int n = 0; n < N; ++n) a[static_cast<std::size_t>(n)] = c[N - n];
  }
};

const WeidemanTable& weideman() {
  static const WeidemanTable table;
  return table;
}

complexd w_upper(complexd z) {
  const auto& tab = weideman();
  const complexd iz(-z.imag(), z.real());
  const complexd denom = tab.L - iz;
  const complexd Z = (tab.L + iz) / denom;
  complexd p{0.0, 0.0};
  for (const double c : tab.a) p = p * Z + c;
  return 2.0 * p / (denom * denom) + (1.0 / kSqrtPi) / denom;
}

}  // namespace

complexd faddeeva_w(complexd z) {
  if (z.imag() >= 0.0) return w_upper(z);
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

complexd halfline_kernel(double sigma, complexd b) {
  if (sigma == 0.0) {
    if (std::abs(b) == 0.0) fail(ErrorKind::Domain, "halfline_kernel: sigma = 0 and b = 0");
    return 1.0 / b;
  }
  if (sigma < 0.0) return std::conj(halfline_kernel(-sigma, std::conj(b)));
  const double rs = std::sqrt(sigma);
  // exp(i 3 pi / 4), exp(i pi / 4)
  const complexd e3(-M_SQRT1_2, M_SQRT1_2);
  const complexd e1(M_SQRT1_2, M_SQRT1_2);
  const complexd zeta = b * e3 / (2.0 * rs);
  return kSqrtPi / (2.0 * rs) * e1 * faddeeva_w(zeta);
}

}  // namespace hlnls
