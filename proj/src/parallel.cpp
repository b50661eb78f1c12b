#include "etf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace etf {

std::uint64_t chunk_count(std::uint64_t count) {
  return (count + kChunkSize - 1) / kChunkSize;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ETF_NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && end && *end == '\0' && v > 0 && v <= 4096) {
      return static_cast<int>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(
    std::uint64_t count, int threads,
    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& body) {
  if (count == 0) return;
  const std::uint64_t chunks = chunk_count(count);
  auto run_chunk = [&](std::uint64_t c) {
    body(c, c * kChunkSize, std::min(count, (c + 1) * kChunkSize));
  };
  std::uint64_t nthreads = static_cast<std::uint64_t>(resolve_thread_count(threads));
  nthreads = std::min(nthreads, chunks);
  if (nthreads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nthreads));
  for (std::uint64_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace etf
