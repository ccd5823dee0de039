#pragma once

// Index-ordered parallel map. Results land in slot i regardless of which
// worker computed them, so output never depends on scheduling. Nested calls
// from inside a worker run serially.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qwlab::detail {

inline thread_local bool in_parallel_region = false;

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1 || in_parallel_region) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    in_parallel_region = true;
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    in_parallel_region = false;
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace qwlab::detail
