#pragma once
// Deterministic index-parallel loop: fn(i) runs once per index, results land
// wherever the caller indexed them, so the output order never depends on
// scheduling. Exceptions are rethrown (first one wins).

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace glassey {

inline void parallel_for_indexed(int count, int jobs, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace glassey
