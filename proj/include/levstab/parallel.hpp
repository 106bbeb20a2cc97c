#pragma once

#include <cstddef>
#include <functional>

namespace levstab {

/// Worker count: `requested` if positive, else LEVSTAB_THREADS if set and
/// positive, else the hardware concurrency (at least 1).
int resolve_threads(int requested);

/// Calls body(i) for every i in [0, n) on up to `threads` workers. Indices are
/// handed out dynamically; the body must write only to its own slot. The first
/// exception thrown by a body is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace levstab
