#pragma once

#include <cstddef>
#include <exception>

namespace siegel {

// Runs fn(i) for i in [0, n) across OpenMP threads. If any call throws, the
// exception from the smallest index is rethrown after the loop.
template <typename Fn>
void parallel_for_indexed(std::size_t n, Fn&& fn) {
  std::exception_ptr first_error;
  std::size_t first_index = n;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(siegel_parallel_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace siegel
