#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace starcut {

/// Worker count: STARCUT_THREADS env var if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("STARCUT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {
inline bool& inside_parallel_region() {
  static thread_local bool inside = false;
  return inside;
}
}  // namespace detail

/// Runs body(i) for i in [0, count). Work is strided across threads; each
/// index is processed exactly once, so results written by index are
/// identical for any thread count. Nested calls run serially instead of
/// oversubscribing.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  int threads = thread_count();
  if (detail::inside_parallel_region() || threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  if (static_cast<std::size_t>(threads) > count) threads = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      detail::inside_parallel_region() = true;
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace starcut
