#pragma once

#include <functional>

namespace simmse {

// Run chunk indices 0..chunk_count-1, at most `workers` at a time. Chunk
// assignment is first-come, but callers must make each chunk's work depend
// only on its index (e.g. derive streams from the index) and reduce the
// results by index afterwards; then the output is identical for any worker
// count. The first exception thrown by a chunk is rethrown after all
// workers stop.
void parallel_chunks(int chunk_count, int workers,
                     const std::function<void(int)>& run_chunk);

}  // namespace simmse
