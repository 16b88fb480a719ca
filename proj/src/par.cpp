#include "chaoskit/par.hpp"

#include <atomic>

namespace chaoskit::par {

namespace {
std::atomic<bool> g_enabled{
#ifdef _OPENMP
    true
#else
    false
#endif
};
}

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }

void set_enabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace chaoskit::par
