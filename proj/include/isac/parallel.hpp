#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace isac {

inline int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, n). Each index must write only to its own slot of
// any shared output; combined with per-index RNG substreams this makes the
// result independent of the worker count. Exceptions are rethrown (first one
// wins) after all threads join.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers < 1) workers = 1;
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::exception_ptr first_error;
  std::mutex err_mtx;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mtx);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace isac
