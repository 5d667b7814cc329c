#pragma once

#include <cstddef>
#include <functional>

namespace qbopt {

/// Number of worker threads. Controlled by the QBOPT_THREADS environment
/// variable (default: hardware concurrency). Affects wall time only; every
/// computation in this library is deterministic for any worker count.
int worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads.
/// Indices are partitioned statically; exceptions from workers are rethrown
/// on the calling thread after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qbopt
