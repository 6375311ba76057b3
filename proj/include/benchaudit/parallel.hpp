#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace benchaudit {

// Runs fn(0..count-1) with at most `concurrency` workers. fn must not
// throw; capture failures into per-index slots at the call site.
template <typename Fn>
void parallel_for(std::size_t count, int concurrency, Fn&& fn) {
  if (count == 0) return;
  std::size_t workers = static_cast<std::size_t>(concurrency < 1 ? 1 : concurrency);
  if (workers > count) workers = count;
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace benchaudit
