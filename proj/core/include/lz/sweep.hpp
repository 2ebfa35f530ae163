#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lz {

// Applies `fn` to every element of `items` using a small thread pool and
// returns the results in input order, independent of completion order.  The
// first exception thrown by any invocation is rethrown after all workers
// join.  `fn` must be safe to call concurrently.
template <class In, class F>
auto ordered_parallel_map(const std::vector<In>& items, F fn)
    -> std::vector<decltype(fn(items[0]))> {
  using Out = decltype(fn(items[0]));
  std::vector<Out> results(items.size());
  if (items.empty()) {
    return results;
  }

  const std::size_t hw = std::thread::hardware_concurrency();
  const std::size_t n_workers =
      std::min(items.size(), hw == 0 ? std::size_t{2} : std::size_t{hw});
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      results[i] = fn(items[i]);
    }
    return results;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < items.size(); i += n_workers) {
        try {
          results[i] = fn(items[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : workers) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
  return results;
}

}  // namespace lz
