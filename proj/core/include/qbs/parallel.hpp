#pragma once

#include <cstddef>
#include <functional>

namespace qbs {

/// Worker count for sweep parallelism: hardware concurrency capped by the
/// QBS_THREADS environment variable (minimum 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on a bounded pool. Bodies must only write
/// to their own output slots; exceptions are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qbs
