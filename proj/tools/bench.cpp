// Benchmark comparing the OpenMP kernels against the serial reference
// implementation. The kernels write to independent slots, so results are
// identical; this only measures wall time.
#include <chrono>
#include <cstdio>
#include <random>

#include "chaoskit/chaos_stats.hpp"
#include "chaoskit/entropy.hpp"
#include "chaoskit/families.hpp"
#include "chaoskit/par.hpp"
#include "chaoskit/periodic.hpp"

using namespace chaoskit;

namespace {

template <typename F>
double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   openmp %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    std::printf("threads available: %d\n", par::max_threads());

    {
        PwlMap g = iterate(tent(2), 15); // 32768 pieces
        double s = time_ms([&] {
            par::set_enabled(false);
            fixed_sets(g);
        });
        double p = time_ms([&] {
            par::set_enabled(true);
            fixed_sets(g);
        });
        report("fixed_sets(T_2^15)", s, p);
    }

    {
        PwlMap f = tent(2);
        std::mt19937_64 rng(7);
        std::vector<std::pair<Rat, Rat>> seeds;
        for (int i = 0; i < 128; ++i) {
            long q = 2147483647;
            seeds.emplace_back(Rat(static_cast<long>(rng() % (q - 2) + 1), q),
                               Rat(static_cast<long>(rng() % (q - 2) + 1), q));
        }
        double s = time_ms([&] {
            par::set_enabled(false);
            ly_pair_scan(f, seeds, 4096, 0.25);
        });
        double p = time_ms([&] {
            par::set_enabled(true);
            ly_pair_scan(f, seeds, 4096, 0.25);
        });
        report("ly_pair_scan(128 x 4096)", s, p);
    }

    {
        PwlMap f = tent(3);
        double s = time_ms([&] {
            par::set_enabled(false);
            mixing_evidence(f, Rat(1, 32), 7, 24);
        });
        double p = time_ms([&] {
            par::set_enabled(true);
            mixing_evidence(f, Rat(1, 32), 7, 24);
        });
        report("mixing_evidence(T_3, 2^-7)", s, p);
    }

    {
        PwlMap f = tent(2);
        double s = time_ms([&] {
            par::set_enabled(false);
            bowen_estimate(f, 10, Rat(1, 64), 4096);
        });
        double p = time_ms([&] {
            par::set_enabled(true);
            bowen_estimate(f, 10, Rat(1, 64), 4096);
        });
        report("bowen_estimate(grid 4096)", s, p);
    }

    par::set_enabled(true);
    return 0;
}
