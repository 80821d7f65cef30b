#pragma once

#include <cstddef>
#include <functional>

namespace ksat {

// Upper bound on worker threads used by the library. 0 means "use
// hardware_concurrency". Results never depend on this value: every parallel
// loop writes to index-addressed slots and reductions run serially afterwards.
void set_max_threads(unsigned n);
unsigned max_threads();

// Calls body(begin, end) on disjoint chunks covering [0, n).
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

template <class F>
void parallel_for(std::size_t n, F&& f) {
  parallel_for_chunks(n, [&f](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) f(i);
  });
}

}  // namespace ksat
