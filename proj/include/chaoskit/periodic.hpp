#pragma once

#include <optional>
#include <set>
#include <vector>

#include "chaoskit/pwl.hpp"

namespace chaoskit {

/// Exact fixed set of a map: isolated solutions of g(x) = x plus the
/// slope-1 pieces lying on the diagonal (reported as segments).
struct FixedSet {
    std::vector<Rat> isolated;        // sorted, deduplicated
    std::vector<IntervalQ> segments;  // sorted, merged
};

FixedSet fixed_sets(const PwlMap& g);
FixedSet fixed_sets_fn(const PwlFn& g);

/// A periodic orbit: sorted points plus the induced cyclic permutation.
struct PeriodicOrbit {
    std::vector<Rat> points;          // strictly increasing
    std::vector<std::size_t> sigma;   // f(points[i]) = points[sigma[i]]; single cycle
    unsigned period = 0;              // == points.size()
};

struct PeriodicPoints {
    std::vector<PeriodicOrbit> orbits; // least periods divide n; sorted by smallest point
    std::vector<IntervalQ> segments;   // diagonal segments of f^n (census, not orbits)
    bool segment_ambiguity = false;    // least periods inside segments are ambiguous
};

/// All isolated points of P_n(f) grouped into orbits labeled with their
/// exact least period.
PeriodicPoints periodic_points(const PwlMap& f, unsigned n, const Budgets& budgets = {});

/// Least periods <= N realized by isolated periodic points (a diagonal
/// segment of f itself realizes period 1; segments of higher iterates are
/// attributed by sampling an interior point).
std::set<unsigned> periods_up_to(const PwlMap& f, unsigned N, const Budgets& budgets = {});

/// m comes before-or-equal n in Sharkovsky's order
/// 3 < 5 < 7 < ... < 2*3 < 2*5 < ... < 8 < 4 < 2 < 1.
bool sharkovsky_leq(unsigned m, unsigned n);

/// Periods forced by the presence of period n, clipped at N: {m <= N : n <= m}.
std::set<unsigned> sharkovsky_forced(unsigned n, unsigned N);

struct SharkovskyType {
    bool finite = true;
    unsigned value = 1; // period when finite, search bound otherwise
    bool is_two_infinity_candidate() const { return !finite; }
};

/// Bound-relative type verdict. Finite(m) when the Sharkovsky-minimal
/// observed period m is certain at bound N; TwoInfinityCandidate(N) when the
/// observed periods are powers of two and the next doubling lies beyond N.
SharkovskyType infer_type(const PwlMap& f, unsigned N, const Budgets& budgets = {});

/// Period of a period-n point under f^k: n / gcd(n, k).
unsigned period_under_power(unsigned n, unsigned k);

/// Smallest odd p in [3, horizon] with f^p(x) <= x < f(x) or
/// f^p(x) >= x > f(x); such a pattern certifies a period-p point.
std::optional<unsigned> odd_period_witness(const PwlMap& f, const Rat& x, unsigned horizon);

} // namespace chaoskit
