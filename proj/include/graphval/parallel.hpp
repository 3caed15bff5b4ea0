#pragma once

#include <cstddef>
#include <functional>

namespace graphval {

/// Caps the worker pool used by parallel_for; 0 restores the hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(0), ..., fn(count-1) across the worker pool and blocks until all
/// complete. Iterations must write only to their own output slots. The first
/// exception thrown by any iteration is rethrown to the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace graphval
