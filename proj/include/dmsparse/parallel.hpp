#pragma once

#include <cstddef>
#include <functional>

namespace dmsparse {

// Runs fn(i) for i in [0, count) on up to `jobs` worker threads. Callers
// write results into preallocated per-index slots, so aggregation order
// never depends on scheduling.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace dmsparse
