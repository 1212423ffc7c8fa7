#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sykq {

inline int hardware_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, n) into `threads` contiguous chunks and runs fn(begin, end, chunk)
// on each, one std::thread per chunk.  threads <= 1 runs inline.  Callers
// merge per-chunk results themselves, in chunk order, so output does not
// depend on scheduling.
inline void parallel_chunks(std::uint64_t n, int threads,
                            const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  if (threads <= 0) threads = hardware_threads();
  if (n < static_cast<std::uint64_t>(threads)) threads = n > 0 ? static_cast<int>(n) : 1;
  if (threads <= 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int c = 0; c < threads; ++c) {
    std::uint64_t begin = n * c / threads;
    std::uint64_t end = n * (c + 1) / threads;
    pool.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sykq
