#pragma once

#include <functional>
#include <random>

#include "chaoskit/pwl.hpp"

namespace testutil {

using chaoskit::Rat;

// random rational in [0,1] with odd denominator (exact orbits under
// integer-slope maps never collapse)
inline Rat random_unit_rat(std::mt19937_64& rng, long max_den = 1000001) {
    long den = static_cast<long>(rng() % static_cast<unsigned long long>(max_den / 2)) * 2 + 1;
    long num = static_cast<long>(rng() % static_cast<unsigned long long>(den + 1));
    return Rat(num, den);
}

// independent bisection oracle for the unique root of `poly` in [lo, hi]
// with poly(lo) < 0 < poly(hi)
inline double bisect_root(const std::function<double(double)>& poly, double lo, double hi,
                          double tol = 1e-13) {
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        (poly(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double golden_ratio_oracle() {
    // positive root of X^2 - X - 1, also of X^3 - 2X - 1 = (X+1)(X^2-X-1)
    return bisect_root([](double x) { return x * x - x - 1; }, 1.0, 2.0);
}

} // namespace testutil
