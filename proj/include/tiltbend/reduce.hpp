#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tiltbend {

/// Worker cap from the TILTBEND_THREADS environment variable;
/// 0 when unset or unparsable.
int thread_cap_from_env();

/// Effective worker count: `requested` if > 0, otherwise the environment cap,
/// otherwise hardware concurrency. Always >= 1.
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is split into
/// contiguous blocks; the callback must only write to per-index slots, which
/// makes the result independent of the worker count. The first exception
/// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Fixed-shape pairwise summation tree (leaf blocks of 8, midpoint splits).
/// The tree depends only on v.size(), never on thread count or data, so
/// accumulated sums are bitwise reproducible.
double pairwise_sum(std::span<const double> v);

}  // namespace tiltbend
