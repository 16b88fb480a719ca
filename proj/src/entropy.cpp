#include "chaoskit/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "chaoskit/par.hpp"
#include "chaoskit/periodic.hpp"

namespace chaoskit {

namespace {

// ---- exact polynomial helpers (ascending coefficients) ----

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int sign_at(const Poly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return sgn(acc);
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

// polynomial remainder of a by b
Poly rem(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b);
        a.swap(b);
        b.swap(r);
        trim(b);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// exact quotient, used only when b divides a
Poly poly_div(Poly a, const Poly& b) {
    trim(a);
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    return q;
}

// Sturm chain of the square-free part; counts distinct real roots in (a, b].
// The square-free reduction matters: characteristic polynomials of covering
// matrices often carry high-multiplicity zero roots, and a shared gcd factor
// would zero out the whole chain at those points.
struct Sturm {
    std::vector<Poly> chain;

    explicit Sturm(Poly p) {
        trim(p);
        Poly g = poly_gcd(p, derivative(p));
        if (g.size() > 1) p = poly_div(std::move(p), g);
        chain.push_back(p);
        Poly d = derivative(p);
        if (!d.empty()) chain.push_back(d);
        while (chain.back().size() > 1) {
            Poly r = rem(chain[chain.size() - 2], chain.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain.push_back(std::move(r));
        }
    }

    int variations(const mpq_class& x) const {
        int v = 0, prev = 0;
        for (const Poly& p : chain) {
            int s = sign_at(p, x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    int roots_in(const mpq_class& a, const mpq_class& b) const {
        return variations(a) - variations(b);
    }
};

// Characteristic polynomial of an exact integer matrix, monic ascending,
// by the Faddeev-LeVerrier recurrence.
Poly charpoly(const AdjMatrix& M) {
    std::size_t n = M.n;
    std::vector<mpq_class> A(n * n), Mk(n * n), tmp(n * n);
    for (std::size_t i = 0; i < n * n; ++i) A[i] = mpq_class(M.e[i]);
    std::vector<mpq_class> c(n + 1);
    c[n] = 1; // coefficient of x^n
    // Mk starts as A; c_{n-k} accumulates -tr(Mk)/k
    Mk = A;
    for (std::size_t k = 1; k <= n; ++k) {
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += Mk[i * n + i];
        c[n - k] = -tr / static_cast<long>(k);
        if (k == n) break;
        // Mk <- A * (Mk + c[n-k] I)
        for (std::size_t i = 0; i < n; ++i) Mk[i * n + i] += c[n - k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (std::size_t l = 0; l < n; ++l) s += A[i * n + l] * Mk[l * n + j];
                tmp[i * n + j] = s;
            }
        Mk.swap(tmp);
    }
    return c;
}

double max_row_sum(const AdjMatrix& M) {
    double best = 0;
    for (std::size_t i = 0; i < M.n; ++i) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < M.n; ++j) s += M.at(i, j);
        best = std::max(best, s.get_d());
    }
    return best;
}

// Largest real root of the characteristic polynomial by Sturm bisection;
// exact signs, deterministic.
double perron_bisect(const AdjMatrix& M, double tol) {
    Poly p = charpoly(M);
    Sturm sturm(p);
    mpq_class lo = 0;
    mpq_class hi = mpq_class(static_cast<long>(std::ceil(max_row_sum(M)))) + 1;
    if (sturm.roots_in(lo, hi) == 0) return 0.0; // nonneg matrix: no root above 0 means radius 0
    while (mpq_class(hi - lo).get_d() > tol * 0.25) {
        mpq_class mid = (lo + hi) / 2;
        if (sturm.roots_in(mid, hi + 1) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return mpq_class((lo + hi) / 2).get_d();
}

// Power iteration on (B + I), which is primitive when B is irreducible.
// Convergence is judged by the Collatz-Wielandt bracket: for a positive
// vector v, min_i (Av)_i/v_i <= lambda(A) <= max_i (Av)_i/v_i.
std::optional<double> perron_power(const AdjMatrix& B, double tol, unsigned cap = 200000) {
    std::size_t n = B.n;
    std::vector<double> v(n, 1.0), w(n);
    std::vector<std::vector<double>> Bd(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Bd[i][j] = B.at(i, j).get_d() + (i == j ? 1.0 : 0.0);
    for (unsigned it = 0; it < cap; ++it) {
        double norm = 0;
        double rmin = 1e300, rmax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += Bd[i][j] * v[j];
            w[i] = s;
            norm = std::max(norm, s);
            if (v[i] > 0) {
                rmin = std::min(rmin, s / v[i]);
                rmax = std::max(rmax, s / v[i]);
            }
        }
        if (norm == 0) return 0.0;
        if (rmax - rmin < std::max(tol * 0.01, 4e-15 * rmax))
            return 0.5 * (rmin + rmax) - 1.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    return std::nullopt;
}

// Strongly connected components (iterative Tarjan), returned as vertex lists.
std::vector<std::vector<std::size_t>> scc_decompose(const AdjMatrix& M) {
    std::size_t n = M.n;
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> onstack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        onstack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            bool descended = false;
            while (f.next < n) {
                std::size_t w = f.next++;
                if (M.at(f.v, w) == 0) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    onstack[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (onstack[w]) low[f.v] = std::min(low[f.v], index[w]);
            }
            if (descended) continue;
            if (low[f.v] == index[f.v]) {
                comps.emplace_back();
                for (;;) {
                    std::size_t w = stack.back();
                    stack.pop_back();
                    onstack[w] = false;
                    comps.back().push_back(w);
                    if (w == f.v) break;
                }
            }
            std::size_t v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
    return comps;
}

AdjMatrix submatrix(const AdjMatrix& M, const std::vector<std::size_t>& idx) {
    AdjMatrix S = AdjMatrix::zero(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) S.at(i, j) = M.at(idx[i], idx[j]);
    return S;
}

std::vector<std::size_t> sigma_of_sorted(const PwlMap& f, const std::vector<Rat>& P) {
    std::vector<std::size_t> sigma(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        Rat img = f.eval(P[i]);
        auto it = std::lower_bound(P.begin(), P.end(), img);
        if (it == P.end() || *it != img)
            fail(Err::NotInvariant, "f(" + P[i].str() + ") not in P");
        sigma[i] = static_cast<std::size_t>(it - P.begin());
    }
    return sigma;
}

AdjMatrix ctd_matrix_of(const std::vector<std::size_t>& sigma) {
    std::size_t k = sigma.size() - 1;
    AdjMatrix M = AdjMatrix::zero(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t a = std::min(sigma[i], sigma[i + 1]);
        std::size_t b = std::max(sigma[i], sigma[i + 1]);
        for (std::size_t j = a; j + 1 <= b; ++j) M.at(i, j) = 1;
    }
    return M;
}

} // namespace

double spectral_radius(const AdjMatrix& M, double tol) {
    if (M.n == 0) return 0.0;
    if (tol <= 0) fail(Err::IllFormed, "tolerance must be positive");
    double best = 0.0;
    for (const auto& comp : scc_decompose(M)) {
        if (comp.size() == 1 && M.at(comp[0], comp[0]) == 0) continue; // trivial block (0)
        AdjMatrix B = submatrix(M, comp);
        if (B.n == 1) {
            best = std::max(best, B.at(0, 0).get_d());
            continue;
        }
        auto pi = perron_power(B, tol);
        if (B.n <= 16) {
            double bis = perron_bisect(B, tol);
            if (pi && std::abs(*pi - bis) > std::max(1e-6, 100 * tol))
                fail(Err::NonConvergence, "power iteration and bisection disagree");
            best = std::max(best, bis);
        } else {
            if (!pi) fail(Err::NonConvergence, "power iteration did not converge");
            best = std::max(best, *pi);
        }
    }
    return best;
}

double entropy_markov(const PwlMap& f, const std::vector<Rat>& P_in, double tol) {
    std::vector<Rat> P = P_in;
    std::sort(P.begin(), P.end());
    P.erase(std::unique(P.begin(), P.end()), P.end());
    if (P.size() < 2) fail(Err::TooFewPoints, "need at least 2 points");
    if (P.front() != f.domain().lo || P.back() != f.domain().hi)
        fail(Err::NotPMonotone, "P must span the domain");
    std::vector<std::size_t> sigma = sigma_of_sorted(f, P); // NotInvariant if f(P) leaves P
    for (std::size_t i = 0; i + 1 < P.size(); ++i)
        if (!f.fn().monotone_on(IntervalQ(P[i], P[i + 1])))
            fail(Err::NotPMonotone, "f not monotone on P-interval " + std::to_string(i));
    double lambda = spectral_radius(ctd_matrix_of(sigma), tol);
    return std::max(0.0, std::log(lambda));
}

EntropyLower entropy_lower_sup(const PwlMap& f, unsigned N, const Budgets& budgets) {
    EntropyLower best;
    for (unsigned n = 1; n <= N; ++n) {
        PeriodicPoints pp = periodic_points(f, n, budgets);
        for (const PeriodicOrbit& orbit : pp.orbits) {
            if (orbit.period != n || orbit.period < 2) continue;
            double lambda = spectral_radius(ctd_matrix_of(orbit.sigma));
            double val = std::max(0.0, std::log(lambda));
            if (val > best.value + 1e-15) {
                best.value = val;
                best.witness = "orbit-period-" + std::to_string(n);
                best.witness_orbit = orbit.points;
            }
        }
    }
    return best;
}

double entropy_upper_lap(const PwlMap& f, unsigned n, const Budgets& budgets) {
    if (n == 0) fail(Err::IllFormed, "n must be >= 1");
    return std::log(static_cast<double>(lap_count(f, n, budgets))) / n;
}

double entropy_upper_lipschitz(const PwlMap& f) {
    double s = f.fn().max_abs_slope().to_double();
    return std::log(std::max(1.0, s));
}

namespace {

// exact sign of x^q - 2 x^{q-2} - 1
int pol_q_sign(const mpq_class& x, unsigned q) {
    mpq_class xq2 = 1;
    for (unsigned i = 0; i < q - 2; ++i) xq2 *= x;
    mpq_class val = xq2 * x * x - 2 * xq2 - 1;
    return sgn(val);
}

} // namespace

double lambda_q(unsigned q, double tol) {
    if (q < 3 || q % 2 == 0) fail(Err::NotOdd, "q must be odd and >= 3");
    if (tol <= 0) fail(Err::IllFormed, "tolerance must be positive");
    // 665857/470832 is a continued-fraction convergent just above sqrt(2).
    mpq_class lo(665857, 470832);
    double hi_d = std::sqrt(2.0) + std::pow(std::sqrt(2.0), -static_cast<double>(q + 1)) + tol;
    mpq_class hi;
    mpq_set_d(hi.get_mpq_t(), hi_d * (1 + 1e-12) + 1e-15);
    if (pol_q_sign(lo, q) >= 0) fail(Err::NonConvergence, "lower bracket invalid");
    while (pol_q_sign(hi, q) <= 0) hi += mpq_class(1, 1024);
    while (mpq_class(hi - lo).get_d() > tol * 0.5) {
        mpq_class mid = (lo + hi) / 2;
        if (pol_q_sign(mid, q) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return mpq_class((lo + hi) / 2).get_d();
}

double type_entropy_bound(unsigned period) {
    if (period == 0) fail(Err::IllFormed, "period must be >= 1");
    unsigned d = 0, q = period;
    while (q % 2 == 0) {
        q /= 2;
        ++d;
    }
    if (q == 1) return 0.0;
    return std::log(lambda_q(q)) / std::ldexp(1.0, static_cast<int>(d));
}

std::optional<Horseshoe> horseshoe_search(const PwlMap& f, unsigned n, unsigned depth,
                                          const Budgets& budgets) {
    if (n == 0 || depth == 0) fail(Err::IllFormed, "power and depth must be >= 1");
    PwlMap g = iterate(f, n, budgets);

    // candidates: P-intervals of f^n breakpoints, then dyadic midpoint splits
    std::vector<IntervalQ> candidates;
    const auto& nodes = g.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        candidates.emplace_back(nodes[i].x, nodes[i + 1].x);
    std::size_t level_begin = 0;
    const std::size_t cap = 20000;
    for (unsigned level = 1; level < depth && candidates.size() < cap; ++level) {
        std::size_t level_end = candidates.size();
        for (std::size_t i = level_begin; i < level_end && candidates.size() < cap; ++i) {
            Rat mid = candidates[i].midpoint();
            candidates.emplace_back(candidates[i].lo, mid);
            candidates.emplace_back(mid, candidates[i].hi);
        }
        level_begin = level_end;
    }

    std::vector<IntervalQ> images(candidates.size());
    par::for_each_index(candidates.size(),
                        [&](std::size_t i) { images[i] = g.fn().image(candidates[i]); });

    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (!candidates[i].interior_disjoint(candidates[j])) continue;
            IntervalQ hull = candidates[i].hull(candidates[j]);
            if (images[i].contains(hull) && images[j].contains(hull)) {
                Horseshoe h;
                h.J = candidates[i];
                h.K = candidates[j];
                h.power = n;
                h.strict = candidates[i].disjoint(candidates[j]);
                return h;
            }
        }
    return std::nullopt;
}

std::map<std::string, IntervalQ> shift_intervals(const PwlMap& f, const Horseshoe& h,
                                                 unsigned depth, const Budgets& budgets) {
    if (depth == 0) fail(Err::IllFormed, "depth must be >= 1");
    PwlMap g = iterate(f, h.power, budgets);
    IntervalQ hull = h.J.hull(h.K);
    if (!g.fn().image(h.J).contains(hull) || !g.fn().image(h.K).contains(hull))
        fail(Err::IllFormed, "not a verified horseshoe for f^power");

    std::map<std::string, IntervalQ> out;
    out["0"] = h.J;
    out["1"] = h.K;
    for (unsigned len = 2; len <= depth; ++len) {
        std::vector<std::pair<std::string, IntervalQ>> fresh;
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
            std::string w;
            for (unsigned b = 0; b < len; ++b) w.push_back(((bits >> (len - 1 - b)) & 1) ? '1' : '0');
            const IntervalQ& source = out.at(w.substr(0, len - 1));
            const IntervalQ& target = out.at(w.substr(1));
            fresh.emplace_back(w, onto_subinterval(g.fn(), source, target));
        }
        for (auto& [w, iv] : fresh) out.emplace(std::move(w), std::move(iv));
    }
    return out;
}

double bowen_estimate(const PwlMap& f, unsigned n, const Rat& eps, unsigned grid) {
    if (grid == 0 || n == 0) fail(Err::IllFormed, "grid and n must be >= 1");
    IntervalQ dom = f.domain();
    Rat len = dom.length();
    std::vector<std::vector<double>> traj(grid);
    par::for_each_index(grid, [&](std::size_t i) {
        Rat x = dom.lo + Rat(2 * static_cast<long>(i) + 1, 2 * static_cast<long>(grid)) * len;
        std::vector<double>& t = traj[i];
        t.reserve(n);
        for (unsigned k = 0; k < n; ++k) {
            t.push_back(x.to_double());
            x = f.eval(x);
        }
    });

    double e = eps.to_double();
    std::vector<std::size_t> accepted;
    for (std::size_t i = 0; i < grid; ++i) {
        bool ok = true;
        for (std::size_t j : accepted) {
            bool separated = false;
            for (std::size_t k = n; k-- > 0;) {
                if (std::abs(traj[i][k] - traj[j][k]) > e) {
                    separated = true;
                    break;
                }
            }
            if (!separated) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(i);
    }
    return std::log(static_cast<double>(accepted.size())) / n;
}

} // namespace chaoskit
