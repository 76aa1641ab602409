#pragma once

#include <cstddef>
#include <functional>

namespace moyal {

// Worker count: MOYAL_THREADS if set, else the hardware concurrency.
int thread_count();

// Calls fn(i) for every i in [0, n). Each index is handled by exactly one
// thread, so results never depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace moyal
