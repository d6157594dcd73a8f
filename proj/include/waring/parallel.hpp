#pragma once

#include <cstddef>
#include <functional>

namespace waring {

/// WARING_THREADS if set and positive, otherwise the hardware concurrency.
unsigned default_thread_count();

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Chunk boundaries depend only on count and
/// threads, so callers that write into per-index slots get the same result
/// for any thread count. Exceptions from workers are rethrown (first chunk
/// wins).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace waring
