#pragma once

#include <cstddef>
#include <functional>

namespace gsqg {

/// Worker count: hardware concurrency, capped by GSQG_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads using static
/// contiguous blocks. Callers write results by index so output order never
/// depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gsqg
