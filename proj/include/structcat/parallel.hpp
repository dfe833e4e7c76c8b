#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace structcat {

// Worker count: hardware concurrency, or STRUCTCAT_THREADS when set.
// Throws std::invalid_argument if STRUCTCAT_THREADS is not a positive integer.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on worker_count() threads, in contiguous
// chunks. fn must only write to slots owned by i.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace structcat
