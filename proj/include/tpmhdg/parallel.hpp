#pragma once

#include <functional>

namespace tpmhdg {

/// Worker count: TPMHDG_THREADS if set and positive, else the hardware concurrency.
int worker_count();

/// Calls body(i) for i in [0, n). Each index is visited exactly once; bodies
/// must only write to per-index slots. The exception of the lowest failing index is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace tpmhdg
