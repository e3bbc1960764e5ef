#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace renyi {

/// Worker count: RENYI_ENT_THREADS if set and positive, else hardware concurrency.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RENYI_ENT_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) n = std::min(std::max(n, 1), cap);
    } catch (const std::exception&) {
    }
  }
  return std::max(n, 1);
}

/// Runs body(i) for i in [0, n). Results must be written to per-index slots so
/// the caller can reduce them in index order.
template <class Body>
void parallel_for(int n, Body&& body) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace renyi
