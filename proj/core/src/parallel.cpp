#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "simmse/parallel.hpp"

namespace simmse {

void parallel_chunks(int chunk_count, int workers,
                     const std::function<void(int)>& run_chunk) {
  if (chunk_count <= 0) return;
  if (workers > chunk_count) workers = chunk_count;
  if (workers <= 1) {
    for (int c = 0; c < chunk_count; ++c) run_chunk(c);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const int c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunk_count) return;
      try {
        run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunk_count, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace simmse
