#pragma once

#include <cstddef>
#include <functional>

namespace d4syl {

/// Worker count: D4SYL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, n), spreading indices over `workers`
/// threads (0 = worker_count()). Indices are handed out dynamically; the
/// body must only write to state owned by index i. The first exception
/// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned workers = 0);

}  // namespace d4syl
