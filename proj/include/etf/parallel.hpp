#pragma once

#include <cstdint>
#include <functional>

namespace etf {

// Chunk boundaries depend only on the work count, never on the thread count,
// so per-chunk results can be merged in chunk order for bit-identical output
// at any parallelism level.
inline constexpr std::uint64_t kChunkSize = 2048;

std::uint64_t chunk_count(std::uint64_t count);

// Precedence: explicit request > ETF_NUM_THREADS > hardware concurrency.
int resolve_thread_count(int requested = 0);

// Runs body(chunk_index, begin, end) over [0, count) split into fixed chunks.
// body must write results only into its own chunk's slot.
void parallel_chunks(std::uint64_t count, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& body);

}  // namespace etf
