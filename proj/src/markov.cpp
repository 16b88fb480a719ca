#include "chaoskit/markov.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace chaoskit {

bool AdjMatrix::dominates(const AdjMatrix& o) const {
    if (n != o.n) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < o.e[i]) return false;
    return true;
}

AdjMatrix mat_mul(const AdjMatrix& A, const AdjMatrix& B) {
    if (A.n != B.n) fail(Err::DomainMismatch, "matrix size mismatch");
    AdjMatrix C = AdjMatrix::zero(A.n);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t k = 0; k < A.n; ++k) {
            const mpz_class& a = A.at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < A.n; ++j) C.at(i, j) += a * B.at(k, j);
        }
    return C;
}

AdjMatrix path_count(const AdjMatrix& M, unsigned n) {
    if (n == 0) fail(Err::IllFormed, "path length must be >= 1");
    AdjMatrix R = M;
    for (unsigned i = 1; i < n; ++i) R = mat_mul(R, M);
    return R;
}

std::string to_dot(const AdjMatrix& M) {
    std::ostringstream os;
    os << "digraph covering {\n";
    for (std::size_t i = 0; i < M.n; ++i) os << "  I" << i + 1 << ";\n";
    for (std::size_t i = 0; i < M.n; ++i)
        for (std::size_t j = 0; j < M.n; ++j) {
            if (M.at(i, j) == 0) continue;
            os << "  I" << i + 1 << " -> I" << j + 1;
            if (M.at(i, j) > 1) os << " [label=\"" << M.at(i, j).get_str() << "\"]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

namespace {

std::vector<std::size_t> sigma_of(const PwlMap& f, const std::vector<Rat>& P) {
    std::vector<std::size_t> sigma(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        Rat img = f.eval(P[i]);
        auto it = std::lower_bound(P.begin(), P.end(), img);
        if (it == P.end() || *it != img)
            fail(Err::NotInvariant, "f(" + P[i].str() + ") = " + img.str() + " not in P");
        sigma[i] = static_cast<std::size_t>(it - P.begin());
    }
    return sigma;
}

} // namespace

OrbitGraph build_orbit_graph(const PwlMap& f, std::vector<Rat> P) {
    std::sort(P.begin(), P.end());
    P.erase(std::unique(P.begin(), P.end()), P.end());
    if (P.size() < 2) fail(Err::TooFewPoints, "need at least 2 points");
    for (const Rat& p : P)
        if (!f.domain().contains(p)) fail(Err::OutOfDomain, "P point outside domain");

    OrbitGraph og;
    og.p_points = P;
    std::vector<std::size_t> sigma = sigma_of(f, P);
    std::size_t k = P.size() - 1;
    for (std::size_t i = 0; i < k; ++i) og.intervals.emplace_back(P[i], P[i + 1]);

    og.full_matrix = AdjMatrix::zero(k);
    og.ctd_matrix = AdjMatrix::zero(k);
    og.p_monotone = true;
    for (std::size_t i = 0; i < k; ++i) {
        if (!f.fn().monotone_on(og.intervals[i])) og.p_monotone = false;
        std::size_t a = std::min(sigma[i], sigma[i + 1]);
        std::size_t b = std::max(sigma[i], sigma[i + 1]);
        for (std::size_t j = 0; j < k; ++j) {
            og.full_matrix.at(i, j) = covers_count(f, og.intervals[i], og.intervals[j]);
            if (a <= j && j + 1 <= b) og.ctd_matrix.at(i, j) = 1;
        }
    }
    return og;
}

PwlMap connect_the_dots(const PwlMap& f, const std::vector<Rat>& P) {
    std::vector<Rat> pts = P;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) fail(Err::TooFewPoints, "need at least 2 points");
    sigma_of(f, pts); // invariance check
    std::vector<Node> nodes;
    nodes.reserve(pts.size());
    for (const Rat& p : pts) nodes.push_back({p, f.eval(p)});
    return make_pwl(IntervalQ(pts.front(), pts.back()), std::move(nodes));
}

std::vector<std::size_t> fundamental_cycle(const PwlMap& f, const PeriodicOrbit& orbit) {
    unsigned p = orbit.period;
    if (p < 2) fail(Err::TooFewPoints, "fundamental cycle needs period >= 2");
    const auto& sigma = orbit.sigma;
    for (std::size_t i = 0; i < orbit.points.size(); ++i)
        if (f.eval(orbit.points[i]) != orbit.points[sigma[i]])
            fail(Err::NotInvariant, "orbit does not belong to this map");

    // Follow eq. (J_k): J_0 = I_1, c = x_1; at each step f^k(c) is an
    // endpoint of J_k and J_k sits inside the span of the previous images.
    std::vector<std::size_t> cycle;
    std::size_t a = 0, b = 1; // current interval [x_a, x_{a+1}] as left index; track both ends
    std::size_t c = 0;        // index of f^k(x_1)
    cycle.push_back(0);
    for (unsigned k = 1; k <= p; ++k) {
        std::size_t fa = sigma[a], fb = sigma[b];
        std::size_t lo = std::min(fa, fb), hi = std::max(fa, fb);
        std::size_t t = sigma[c];
        std::size_t next;
        if (t == lo)
            next = t; // interval [t, t+1]
        else if (t == hi)
            next = t - 1; // interval [t-1, t]
        else
            fail(Err::IllFormed, "fundamental cycle selection not at span endpoint");
        if (k < p) cycle.push_back(next);
        a = next;
        b = next + 1;
        c = t;
    }
    if (a != 0) fail(Err::IllFormed, "fundamental cycle does not close at I_1");
    return cycle;
}

std::set<unsigned> primitive_cycle_lengths(const AdjMatrix& M, unsigned L) {
    if (L > 20) fail(Err::BoundTooLarge, "primitive cycle enumeration capped at length 20");
    std::set<unsigned> lengths;
    std::vector<std::size_t> walk;
    std::size_t explored = 0;
    const std::size_t cap = 20'000'000;

    auto is_primitive = [](const std::vector<std::size_t>& w) {
        std::size_t len = w.size();
        for (std::size_t d = 1; d < len; ++d) {
            if (len % d != 0) continue;
            bool rep = true;
            for (std::size_t i = d; i < len && rep; ++i) rep = w[i] == w[i % d];
            if (rep) return false;
        }
        return true;
    };

    // DFS over closed walks from each start vertex; a repetition of a
    // shorter cycle is filtered at closure time.
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
        if (++explored > cap) fail(Err::BoundTooLarge, "cycle enumeration explosion");
        if (!walk.empty() && v == start && walk.size() <= L && is_primitive(walk))
            lengths.insert(static_cast<unsigned>(walk.size()));
        if (walk.size() >= L) return;
        for (std::size_t w = 0; w < M.n; ++w) {
            if (M.at(v, w) == 0) continue;
            walk.push_back(w);
            dfs(start, w);
            walk.pop_back();
        }
    };
    for (std::size_t s = 0; s < M.n; ++s) {
        walk.clear();
        dfs(s, s);
    }
    return lengths;
}

bool is_stefan_orbit(const PeriodicOrbit& orbit) {
    unsigned p = orbit.period;
    if (p < 3 || p % 2 == 0) fail(Err::NotOddPeriod, "Stefan test needs odd period >= 3");
    std::size_t mid = (p - 1) / 2;

    // expected sorted index of f^k(median) under the spiral ordering
    auto expected = [&](unsigned k, bool up) -> std::size_t {
        if (k == 0) return mid;
        if (k % 2 == 1) return up ? mid + (k + 1) / 2 : mid - (k + 1) / 2;
        return up ? mid - k / 2 : mid + k / 2;
    };
    for (int up = 0; up < 2; ++up) {
        bool ok = true;
        std::size_t idx = mid;
        for (unsigned k = 0; k < p && ok; ++k) {
            if (idx != expected(k, up == 1)) ok = false;
            idx = orbit.sigma[idx];
        }
        if (ok) return true;
    }
    return false;
}

} // namespace chaoskit
