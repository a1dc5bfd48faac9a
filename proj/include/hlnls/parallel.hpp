#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hlnls {

/// Worker cap: HALFLINE_NLS_THREADS when set, hardware concurrency otherwise.
inline unsigned max_threads() {
  if (const char* env = std::getenv("HALFLINE_NLS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Static block partition of [0, n) across worker threads. fn must be safe to
/// call concurrently for distinct indices.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned k = std::min<std::size_t>(max_threads(), n);
  if (k <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (unsigned w = 0; w < k; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += k) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hlnls
