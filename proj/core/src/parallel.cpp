#include "lpcocycle/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpcocycle {
namespace {

std::atomic<unsigned> g_default_jobs{0};

unsigned resolve(unsigned jobs) {
  if (jobs == 0) jobs = g_default_jobs.load(std::memory_order_relaxed);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

}  // namespace

void set_default_jobs(unsigned jobs) noexcept { g_default_jobs.store(jobs, std::memory_order_relaxed); }

unsigned default_jobs() noexcept { return resolve(0); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned jobs) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve(jobs), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lpcocycle
