#pragma once

#include <cstddef>
#include <functional>

namespace kahler {

/// Number of worker threads used by parallel_for (default: hardware threads).
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n). Tasks are independent; callers reduce results
/// sequentially afterwards, so outputs never depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kahler
