#pragma once

#include <cstddef>
#include <functional>

namespace pointlab {

/// Worker count: hardware concurrency, capped by POINTLAB_THREADS when it
/// holds a positive integer. Always >= 1.
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; callers write results into slot i, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pointlab
