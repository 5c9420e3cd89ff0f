#pragma once

#include <cstddef>
#include <functional>

namespace diracdelay {

// Runs fn(i) for every i in [0, n), splitting the range across worker
// threads. The pool size is hardware concurrency capped by the
// DIRAC_DELAY_THREADS environment variable (a cap of 1 or n <= 1 runs
// inline). fn must be safe to call concurrently for distinct indices;
// callers preserve determinism by writing results only into slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::size_t worker_thread_count();

}  // namespace diracdelay
