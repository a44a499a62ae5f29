#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pfkit {

/// Worker count for internal scans. PFKIT_THREADS caps it; the default is the
/// hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PFKIT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, hw));
    } catch (...) {
    }
  }
  return hw;
}

/// Splits [0, n) into contiguous chunks and runs `fn(begin, end, chunk)` on
/// each, one thread per chunk. Returns the number of chunks. Callers merge the
/// per-chunk results in chunk order so the outcome never depends on scheduling.
template <class Fn>
std::size_t parallel_chunks(std::size_t n, std::size_t min_chunk, Fn&& fn) {
  std::size_t workers = worker_count();
  std::size_t chunks = std::clamp<std::size_t>(n / std::max<std::size_t>(min_chunk, 1), 1, workers);
  if (chunks <= 1) {
    fn(std::size_t{0}, n, std::size_t{0});
    return 1;
  }
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::size_t step = (n + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t b = std::min(n, c * step);
    std::size_t e = std::min(n, b + step);
    pool.emplace_back([&fn, b, e, c] { fn(b, e, c); });
  }
  for (auto& t : pool) t.join();
  return chunks;
}

}  // namespace pfkit
