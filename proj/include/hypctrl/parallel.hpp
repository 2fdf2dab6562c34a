#pragma once

#include <cstddef>
#include <functional>

namespace hypctrl {

/// Worker count for the per-cell loops. Reads HYPCTRL_THREADS once; defaults
/// to 1 so that runs stay single-threaded unless asked otherwise.
std::size_t thread_count();

/// Overrides the worker count (0 restores the environment default).
void set_thread_count(std::size_t n);

/// Calls body(i) for i in [0, n). Each index is visited exactly once; the
/// index ranges handed to workers are contiguous blocks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hypctrl
