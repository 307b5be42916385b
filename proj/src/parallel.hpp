#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fairclust::detail {

// Calls fn(i) for i in [0, count), splitting the range into contiguous chunks
// across `workers` threads. fn must only write to per-index state.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count / workers * w + std::min(w, count % workers);
    const std::size_t end = begin + count / workers + (w < count % workers ? 1 : 0);
    threads.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace fairclust::detail
