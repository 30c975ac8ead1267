#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bredon {

/// results[i] = fn(i). Output order is independent of the worker count.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn, int workers = 1) {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results(count);
  const std::size_t n = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(count, 1));
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t w = 0; w < n; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += n) results[i] = fn(i);
    });
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace bredon
