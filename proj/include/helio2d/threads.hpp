#pragma once

#include <cstdint>
#include <functional>

namespace helio2d {

// Worker count for parallel regions; 0 picks hardware concurrency.
// Initialized from HELIO2D_THREADS when set.
int thread_count();
void set_thread_count(int n);

// Runs fn over [0, n) split into contiguous chunks, one per worker.
// fn(begin, end) must only write to disjoint per-index state.
void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace helio2d
