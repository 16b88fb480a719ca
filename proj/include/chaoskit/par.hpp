#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chaoskit::par {

/// Global switch for the OpenMP kernels. The serial path is the reference
/// implementation; tests run every kernel both ways and compare results.
bool enabled();
void set_enabled(bool on);
int max_threads();

/// Runs body(i) for i in [0, n). Work items must be independent and write
/// only to their own output slots, so results are identical for any
/// schedule. Exceptions thrown by body are rethrown on the calling thread.
template <typename F>
void for_each_index(std::size_t n, F&& body, bool parallel = enabled()) {
    if (n == 0) return;
#ifdef _OPENMP
    if (parallel && n > 1) {
        std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!eptr) eptr = std::current_exception();
            }
        }
        if (eptr) std::rethrow_exception(eptr);
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace chaoskit::par
