#pragma once

#include <functional>

namespace spdgeom {

/// Worker count: requested if > 0, else SPD_GEOM_THREADS, else hardware.
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Work items must be
/// independent; exceptions are rethrown on the calling thread.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace spdgeom
