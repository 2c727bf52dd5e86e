#pragma once

#include <cstddef>
#include <functional>

namespace hml {

/// Number of workers used by parallel_for.  Initialized from HML_THREADS
/// when set, otherwise from std::thread::hardware_concurrency().
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n).  Work is split into contiguous blocks so
/// each index is always handled by exactly one call; results written to
/// index-owned slots are therefore identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hml
