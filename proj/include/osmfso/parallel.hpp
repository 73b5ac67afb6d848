#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace osmfso {

/// out[i] = f(i) for i in [0, n), spread over OpenMP threads. Results land in
/// index order, so the output does not depend on the thread count. The first
/// exception thrown by any f(i) is rethrown on the calling thread.
template <typename F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using T = decltype(f(std::size_t{}));
  std::vector<T> out(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(osmfso_parallel_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Serial counterpart of parallel_map with identical semantics.
template <typename F>
auto serial_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

}  // namespace osmfso
