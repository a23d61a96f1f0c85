#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace sqg {

/// Run fn(i) for i in [0, count) on up to `threads` workers. Tasks must be
/// independent (pure functions over distinct data); results should be
/// written into pre-sized slots so the outcome is order-independent.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const int workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1))
        fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace sqg
