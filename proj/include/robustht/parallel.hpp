#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace robustht {

// Worker-pool width: ROBUST_HT_THREADS caps it, hardware concurrency is the
// default.
inline int worker_pool_size(int jobs) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("ROBUST_HT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = cap;
  }
  return std::min(threads, std::max(1, jobs));
}

// Run fn(0..count-1) on a bounded pool. Work items must be independent;
// callers store results by index so scheduling order cannot change output.
template <typename Fn>
void run_indexed(int count, int threads, Fn&& fn) {
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int w = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace robustht
