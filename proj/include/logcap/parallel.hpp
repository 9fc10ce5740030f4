#pragma once

#include <functional>

namespace logcap {

/// Worker cap for parallel loops; 0 restores the hardware default. The cap
/// changes wall time only, never results: work is split into a fixed chunk
/// grid independent of the worker count.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

/// Runs fn(chunk) for chunk = 0..chunks-1 on min(cap, chunks) workers.
/// Callers own the chunk -> result mapping; reducing in chunk order keeps
/// the outcome identical for every worker count. The first exception thrown
/// by any chunk is rethrown after all workers finish.
void parallel_chunks(unsigned chunks, const std::function<void(unsigned)>& fn);

}  // namespace logcap
