#pragma once

#include <cstddef>
#include <functional>

namespace radiant {

/// Worker cap: RADIANT_THREADS when set (>= 1), else hardware concurrency.
int worker_thread_count();

/// Runs fn(0..n-1) across up to worker_thread_count() threads. Tasks must be
/// independent; results are deterministic because each index owns its output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace radiant
