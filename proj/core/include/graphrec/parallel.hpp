#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace graphrec {

/// Thread count for a requested value: nonzero passes through; zero reads
/// GRAPHREC_THREADS, falling back to the hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

/// Splits [0, count) into contiguous chunks, one per thread, and calls
/// fn(begin, end) on each. Runs inline when threads <= 1.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  threads = std::min(threads, count);
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = count * t / threads;
    const std::size_t end = count * (t + 1) / threads;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace graphrec
