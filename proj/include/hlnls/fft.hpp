#pragma once

#include <complex>
#include <vector>

namespace hlnls {

/// In-place complex DFT, sign = -1 forward (e^{-i 2 pi jk/n}), +1 backward.
/// No normalization is applied. Backed by FFTW with a process-wide plan cache.
void dft(std::vector<std::complex<double>>& data, int sign);

}  // namespace hlnls
