#ifndef OUL_PARALLEL_HPP
#define OUL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace oul {

/// Worker count: OUL_THREADS if set to a positive integer, else hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("OUL_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace detail {

template <class Body>
void run_workers(std::size_t workers, Body&& body) {
  if (workers <= 1) {
    body(std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Calls fn(i) for i in [0, n). Each index is visited exactly once; results
/// must be written to per-index storage by the caller.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t workers = worker_count()) {
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  detail::run_workers(workers, [&](std::size_t) {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  });
}

/// Smallest index i in [0, n) for which fn(i) yields a value, together with
/// that value. The answer does not depend on scheduling: workers skip indices
/// above the best hit found so far but always finish lower ones.
template <class T, class Fn>
std::optional<std::pair<std::size_t, T>> find_first(std::size_t n, Fn&& fn, std::size_t workers = worker_count()) {
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex mutex;
  std::optional<std::pair<std::size_t, T>> result;
  detail::run_workers(workers, [&](std::size_t) {
    for (std::size_t i = next.fetch_add(1); i < n && i < best.load(); i = next.fetch_add(1)) {
      std::optional<T> hit = fn(i);
      if (!hit) continue;
      std::lock_guard lock(mutex);
      if (!result || i < result->first) {
        result.emplace(i, std::move(*hit));
        best.store(i);
      }
    }
  });
  return result;
}

}  // namespace oul

#endif  // OUL_PARALLEL_HPP
