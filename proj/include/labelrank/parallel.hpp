#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace labelrank {

/// Worker count from `LABELRANK_THREADS`; unset, empty or 0 means one
/// worker per hardware thread.
inline unsigned threads_from_env() {
  const char* raw = std::getenv("LABELRANK_THREADS");
  unsigned long requested = 0;
  if (raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    requested = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0') requested = 0;
  }
  if (requested == 0) {
    requested = std::max(1u, std::thread::hardware_concurrency());
  }
  return static_cast<unsigned>(requested);
}

/// Calls `body(begin, end, worker)` over contiguous slices of [0, count).
/// Slices are fixed by `count` and `workers` alone; work that writes only
/// to its own indices is therefore reproducible for any worker count.
/// The first exception thrown by a worker is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  constexpr std::size_t kMinSlice = 256;
  workers = std::max(1u, workers);
  const std::size_t useful =
      std::max<std::size_t>(1, (count + kMinSlice - 1) / kMinSlice);
  if (workers > useful) workers = static_cast<unsigned>(useful);
  if (workers == 1) {
    body(std::size_t{0}, count, 0u);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t slice = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(count, w * slice);
      const std::size_t end = std::min(count, begin + slice);
      pool.emplace_back([&, begin, end, w] {
        try {
          body(begin, end, w);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace labelrank
