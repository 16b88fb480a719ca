#include "chaoskit/periodic.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "chaoskit/par.hpp"

namespace chaoskit {

namespace {

struct PieceSolution {
    std::optional<Rat> isolated;
    std::optional<IntervalQ> segment;
};

// Per-piece diagonal solve; breakpoint solutions are found on both adjacent
// pieces and deduplicated afterwards.
PieceSolution solve_piece(const Node& a, const Node& b) {
    PieceSolution out;
    Rat dy = b.y - a.y, dx = b.x - a.x;
    if (dy == dx) {
        if (a.y == a.x) out.segment = IntervalQ(a.x, b.x);
        return out;
    }
    Rat x = (a.y * dx - a.x * dy) / (dx - dy);
    if (x >= a.x && x <= b.x) out.isolated = x;
    return out;
}

} // namespace

FixedSet fixed_sets_fn(const PwlFn& g) {
    const auto& nodes = g.nodes();
    std::size_t pieces = nodes.size() - 1;
    std::vector<PieceSolution> slots(pieces);
    par::for_each_index(pieces, [&](std::size_t i) { slots[i] = solve_piece(nodes[i], nodes[i + 1]); });

    FixedSet fs;
    for (const auto& s : slots) {
        if (s.segment) {
            if (!fs.segments.empty() && fs.segments.back().hi >= s.segment->lo)
                fs.segments.back().hi = max(fs.segments.back().hi, s.segment->hi);
            else
                fs.segments.push_back(*s.segment);
        }
        if (s.isolated) {
            if (fs.isolated.empty() || fs.isolated.back() != *s.isolated)
                fs.isolated.push_back(*s.isolated);
        }
    }
    // drop isolated points swallowed by a segment
    if (!fs.segments.empty()) {
        std::vector<Rat> keep;
        for (const Rat& x : fs.isolated) {
            bool inside = false;
            for (const IntervalQ& s : fs.segments)
                if (s.contains(x)) { inside = true; break; }
            if (!inside) keep.push_back(x);
        }
        fs.isolated = std::move(keep);
    }
    return fs;
}

FixedSet fixed_sets(const PwlMap& g) { return fixed_sets_fn(g.fn()); }

namespace {

// Exact least period of a point known to satisfy f^n(x) = x; traces the
// orbit and returns the ordered points.
std::vector<Rat> trace_orbit(const PwlMap& f, const Rat& x, unsigned cap) {
    std::vector<Rat> orbit{x};
    Rat y = f.eval(x);
    while (y != x) {
        orbit.push_back(y);
        y = f.eval(y);
        if (orbit.size() > cap) fail(Err::NotInvariant, "orbit does not close within cap");
    }
    return orbit;
}

PeriodicOrbit make_orbit(std::vector<Rat> cycle, const PwlMap& f) {
    PeriodicOrbit o;
    o.points = cycle;
    std::sort(o.points.begin(), o.points.end());
    o.period = static_cast<unsigned>(o.points.size());
    o.sigma.resize(o.points.size());
    for (std::size_t i = 0; i < o.points.size(); ++i) {
        Rat img = f.eval(o.points[i]);
        auto it = std::lower_bound(o.points.begin(), o.points.end(), img);
        if (it == o.points.end() || *it != img) fail(Err::NotInvariant, "orbit not closed");
        o.sigma[i] = static_cast<std::size_t>(it - o.points.begin());
    }
    return o;
}

} // namespace

PeriodicPoints periodic_points(const PwlMap& f, unsigned n, const Budgets& budgets) {
    if (n == 0) fail(Err::IllFormed, "period must be >= 1");
    PwlMap g = iterate(f, n, budgets);
    FixedSet fs = fixed_sets(g);

    PeriodicPoints out;
    out.segments = fs.segments;
    out.segment_ambiguity = !fs.segments.empty() && n > 1;

    std::set<Rat, std::less<Rat>> seen;
    for (const Rat& x : fs.isolated) {
        if (seen.count(x)) continue;
        std::vector<Rat> cycle = trace_orbit(f, x, n);
        for (const Rat& p : cycle) seen.insert(p);
        out.orbits.push_back(make_orbit(std::move(cycle), f));
    }
    std::sort(out.orbits.begin(), out.orbits.end(),
              [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
                  return a.points.front() < b.points.front();
              });
    return out;
}

std::set<unsigned> periods_up_to(const PwlMap& f, unsigned N, const Budgets& budgets) {
    std::set<unsigned> periods;
    std::map<Rat, unsigned> least_period; // every orbit member, filled per trace
    PwlMap g = f;
    for (unsigned n = 1; n <= N; ++n) {
        if (n > 1) g = compose(f, g, budgets);
        FixedSet fs = fixed_sets(g);
        for (const Rat& x : fs.isolated) {
            auto it = least_period.find(x);
            if (it != least_period.end()) {
                periods.insert(it->second);
                continue;
            }
            std::vector<Rat> orbit = trace_orbit(f, x, n);
            unsigned d = static_cast<unsigned>(orbit.size());
            for (Rat& p : orbit) least_period.emplace(std::move(p), d);
            periods.insert(d);
        }
        for (const IntervalQ& s : fs.segments) {
            if (n == 1) {
                periods.insert(1);
                continue;
            }
            // Sample an interior point; all but countably many points of the
            // segment share one least period, the 1/3 point avoids the midpoint
            // fixed point of reflection-like pieces.
            Rat probe = s.lo + s.length() / Rat(3);
            periods.insert(static_cast<unsigned>(trace_orbit(f, probe, n).size()));
        }
    }
    return periods;
}

namespace {

// Order key: odd-multiple classes first (by power of two, then odd part),
// then pure powers of two by decreasing exponent.
struct ShKey {
    int cls;
    long a;
    long b;
    bool operator<=(const ShKey& o) const {
        if (cls != o.cls) return cls < o.cls;
        if (a != o.a) return a < o.a;
        return b <= o.b;
    }
};

ShKey sh_key(unsigned m) {
    int d = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++d;
    }
    if (m > 1) return {0, d, static_cast<long>(m)};
    return {1, -d, 0};
}

} // namespace

bool sharkovsky_leq(unsigned m, unsigned n) {
    if (m == 0 || n == 0) fail(Err::IllFormed, "Sharkovsky order is on positive integers");
    return sh_key(m) <= sh_key(n);
}

std::set<unsigned> sharkovsky_forced(unsigned n, unsigned N) {
    if (n == 0) fail(Err::IllFormed, "period must be >= 1");
    std::set<unsigned> out;
    for (unsigned m = 1; m <= N; ++m)
        if (sharkovsky_leq(n, m)) out.insert(m);
    return out;
}

SharkovskyType infer_type(const PwlMap& f, unsigned N, const Budgets& budgets) {
    std::set<unsigned> periods = periods_up_to(f, N, budgets);
    if (periods.empty()) fail(Err::NotInvariant, "interval map with no periodic point");
    unsigned m = *periods.begin();
    for (unsigned p : periods)
        if (sharkovsky_leq(p, m)) m = p;
    bool power_of_two = (m & (m - 1)) == 0;
    if (!power_of_two) return {true, m};
    // Type 2^d is certain only if the next doubling was within reach and absent.
    unsigned next = 2 * m;
    if (next <= N && !periods.count(next)) return {true, m};
    if (next > N) return {false, N};
    return {true, m}; // next observed would have been the Sharkovsky-min; unreachable
}

unsigned period_under_power(unsigned n, unsigned k) {
    if (n == 0 || k == 0) fail(Err::IllFormed, "positive integers required");
    return n / std::gcd(n, k);
}

std::optional<unsigned> odd_period_witness(const PwlMap& f, const Rat& x, unsigned horizon) {
    if (!f.domain().contains(x)) fail(Err::OutOfDomain, "seed outside domain");
    std::vector<Rat> traj{x};
    for (unsigned i = 0; i < horizon; ++i) traj.push_back(f.eval(traj.back()));
    const Rat& x0 = traj[0];
    const Rat& x1 = traj[1];
    for (unsigned p = 3; p <= horizon; p += 2) {
        const Rat& xp = traj[p];
        if ((xp <= x0 && x0 < x1) || (xp >= x0 && x0 > x1)) return p;
    }
    return std::nullopt;
}

} // namespace chaoskit
