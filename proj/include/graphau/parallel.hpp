#pragma once

#include <cstddef>
#include <functional>

namespace graphau {

// Worker count used by data-parallel loops. Read once from GRAPHAU_THREADS
// (falls back to hardware concurrency); set_thread_count overrides it.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Runs fn(begin, end) over contiguous chunks of [0, n). Each index is visited
// by exactly one worker, so per-index results never depend on the count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_chunk = 64);

}  // namespace graphau
