#pragma once

#include <cstddef>
#include <functional>

namespace synth {

// Worker cap from SYNTH_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Runs fn(begin, end) over [0, n) split into fixed-size blocks. Block
// boundaries depend only on n, never on the worker count, so any
// per-block results combine in a thread-count-independent order.
void parallel_for_blocks(std::size_t n, std::size_t block,
                         const std::function<void(std::size_t, std::size_t)>& fn);

// Convenience: one index per call.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}
