#pragma once

#include <cstddef>
#include <functional>

namespace uqcs {

// Worker count: UQCS_THREADS when set (at most 256), else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// must write results to per-index slots so output does not depend on the
// schedule. The first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace uqcs
