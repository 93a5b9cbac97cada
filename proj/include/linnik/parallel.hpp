#pragma once

// Deterministic fork-join helper: results are produced into an
// index-addressed vector so callers reduce in a fixed order regardless of
// worker count. Published endpoints are therefore byte-identical between
// serial and parallel runs.

#include <cstddef>
#include <thread>
#include <vector>

namespace linnik {

inline unsigned effective_workers(unsigned requested) {
  if (requested == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  return requested;
}

template <typename T, typename Fn>
std::vector<T> parallel_map(size_t n, unsigned workers, Fn&& fn) {
  std::vector<T> out(n);
  workers = effective_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const unsigned nthreads = (unsigned)std::min<size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::vector<std::exception_ptr> errors(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (size_t i = t; i < n; i += nthreads) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace linnik
