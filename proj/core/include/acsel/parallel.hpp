#pragma once

#include <functional>

namespace acsel {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Work items must not
/// depend on execution order. The first exception thrown by any item is
/// rethrown on the calling thread after all workers join.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

/// Default worker count (hardware concurrency, at least 1).
int default_jobs();

}  // namespace acsel
