#include "hlnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "hlnls/errors.hpp"

namespace hlnls {

namespace {

// FFTW's planner is not thread-safe; executions of an existing plan are.
std::mutex planner_mutex;

fftw_plan get_plan(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_UNALIGNED keeps the plan valid for any caller buffer.
  std::vector<std::complex<double>> scratch(n);
  fftw_plan p = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
      reinterpret_cast<fftw_complex*>(scratch.data()),
      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void dft(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) fail(ErrorKind::InvalidInput, "dft: empty input");
  fftw_plan p = get_plan(data.size(), sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace hlnls
