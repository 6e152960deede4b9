#pragma once

#include <cstddef>
#include <functional>

namespace aif {

/// Worker count for `requested` (0 = the AIF_THREADS environment variable if
/// set, else std::thread::hardware_concurrency()). Always at least 1.
std::size_t ResolveThreads(std::size_t requested);

/// Runs fn(i) for i in [0, n) over `threads` workers in contiguous blocks.
/// The first exception thrown by any worker is rethrown on the caller.
void ParallelFor(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace aif
