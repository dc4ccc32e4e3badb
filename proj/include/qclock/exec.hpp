#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qclock {

// Execution policy for the batch front ends (sweeps, oracle time grids,
// sampling). Every parallel entry point has a serial twin that runs the
// identical per-item code, so serial and openmp results are bit-equal:
// items never share accumulators and reductions stay out of OpenMP's hands.
enum class Exec { serial, openmp };

inline const char* to_string(Exec e) { return e == Exec::serial ? "serial" : "openmp"; }

// Runs body(i) for i in [0, n). Exceptions thrown by items are rethrown on
// the calling thread (first one wins under openmp); callers that need
// per-item error rows catch inside the body instead.
template <typename Body>
void parallel_for(Exec exec, std::size_t n, Body&& body) {
#if defined(_OPENMP)
  if (exec == Exec::openmp) {
    std::exception_ptr first;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
      try {
        body(std::size_t(i));
      } catch (...) {
#pragma omp critical(qclock_parallel_for_err)
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace qclock
