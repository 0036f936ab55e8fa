#include "ergolab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ergolab {

namespace {
std::atomic<unsigned> g_workers{1};
// Set on threads executing a parallel region; nested regions run serially.
thread_local bool t_in_region = false;

struct RegionGuard {
  bool previous = t_in_region;
  RegionGuard() { t_in_region = true; }
  ~RegionGuard() { t_in_region = previous; }
};
}  // namespace

void set_worker_count(unsigned workers) { g_workers.store(std::max(1u, workers)); }

unsigned worker_count() { return g_workers.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1 || t_in_region) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto drain = [&] {
    RegionGuard guard;
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace ergolab
