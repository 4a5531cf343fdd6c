#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace cedfv {

//! Static-partition parallel loop.  `body(begin, end)` runs on contiguous
//! index ranges; every index is written by exactly one worker, so results
//! are bit-identical for any thread count.
template <typename Body>
void parallel_for(std::int64_t n, int threads, Body&& body) {
  if (n <= 0) return;
  if (threads <= 1 || n < 2 * threads) {
    body(std::int64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  const std::int64_t chunk = (n + threads - 1) / threads;
  for (int t = 1; t < threads; ++t) {
    const std::int64_t b = t * chunk;
    const std::int64_t e = std::min<std::int64_t>(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  body(std::int64_t{0}, std::min<std::int64_t>(n, chunk));
  for (auto& th : pool) th.join();
}

inline int default_thread_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace cedfv
