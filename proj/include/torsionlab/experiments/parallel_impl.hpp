#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace torsionlab::experiments {

template <class T>
std::vector<T> parallel_map(int n, int jobs, const std::function<T(int)> &fn) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(n));
  const int workers = std::clamp(resolve_jobs(jobs), 1, std::max(1, n));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto &t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto &s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace torsionlab::experiments
