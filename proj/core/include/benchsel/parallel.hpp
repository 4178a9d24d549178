#pragma once

#include <cstddef>
#include <functional>

namespace benchsel {

/// Worker cap: SELECTOR_THREADS env var if set (>=1), else hardware
/// concurrency, else 1.
std::size_t thread_count();

/// Runs fn(i) for i in [0, n) on up to thread_count() threads. Each index is
/// processed exactly once; callers write results into pre-sized slots so the
/// merged output is independent of scheduling. Exceptions from workers are
/// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace benchsel
