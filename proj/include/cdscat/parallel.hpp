#pragma once

#include <cstddef>
#include <functional>

namespace cdscat {

/// Worker count used by parallel_for; 0 selects hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n) on the worker pool. Each index writes its own
/// slot, so results are independent of scheduling. If any call throws, the
/// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cdscat
