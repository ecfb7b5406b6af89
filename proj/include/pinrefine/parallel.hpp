#pragma once

#include <cstddef>
#include <functional>

namespace pinrefine {

// Worker count from PINREFINE_THREADS (0 or unset = hardware concurrency).
unsigned threads_from_env();

// 0 means hardware concurrency; always at least 1.
unsigned resolve_threads(unsigned requested);

// Runs body(i) for every i in [0, count) on up to `threads` workers. Tasks are
// handed out dynamically, so body must only write to state owned by task i.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace pinrefine
