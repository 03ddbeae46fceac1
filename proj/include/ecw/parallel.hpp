#pragma once

#include <cstddef>
#include <functional>

namespace ecw {

// Worker count: ECW_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are fixed by
// n and the worker count, so callers that write per-index results get
// deterministic output.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ecw
