#pragma once

#include <cstddef>
#include <functional>

namespace quadrapt {

/// Worker count: QUADRAPT_THREADS when set, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace quadrapt
