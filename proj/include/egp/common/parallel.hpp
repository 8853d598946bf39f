#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace egp {

/// Runs task(i) for i in [0, count) on up to `workers` threads.
/// Each index is claimed by exactly one thread; the first exception is rethrown.
inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t)>& task) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::mutex lock;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto body = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard guard(lock);
        if (next >= count || failure) return;
        i = next++;
      }
      try {
        task(i);
      } catch (...) {
        std::lock_guard guard(lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const std::size_t n = std::min<std::size_t>(workers, count);
  pool.reserve(n);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(body);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace egp
