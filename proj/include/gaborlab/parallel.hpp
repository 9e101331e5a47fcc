#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace gaborlab {

// Worker cap: GABORLAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("GABORLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Calls fn(i) for every i in [0, n). Work items are handed out in fixed
// contiguous blocks, so any result that fn writes to slot i is independent of
// the number of workers.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Pairwise tree reduction in index order: ((p0 + p1) + (p2 + p3)) + ...
template <typename T, typename Combine>
T tree_reduce(std::vector<T> parts, Combine combine) {
  while (parts.size() > 1) {
    std::vector<T> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(combine(std::move(parts[i]), std::move(parts[i + 1])));
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

}  // namespace gaborlab
