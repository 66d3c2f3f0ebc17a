#pragma once

// Static-chunk parallel loop. Work is split into contiguous index ranges that
// depend only on `count` and `threads`, and every result is written to its own
// index, so outputs do not depend on scheduling.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace realroots {

/// body(begin, end) over disjoint ranges covering [0, count).
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  if (count == 0) return;
  std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  workers = std::min(workers, count);
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace realroots
