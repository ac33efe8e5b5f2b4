#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace courbure {

// COURBURE_THREADS caps worker parallelism; defaults to the hardware
// concurrency.
inline int thread_cap() {
  if (const char* env = std::getenv("COURBURE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) on up to thread_cap() workers. Each index
// must touch only its own output slot.
template <class F>
void parallel_for(int n, F&& fn) {
  const int workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace courbure
