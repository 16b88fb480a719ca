// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chaoskit/chaos_stats.hpp"
#include "chaoskit/entropy.hpp"
#include "chaoskit/families.hpp"
#include "chaoskit/markov.hpp"
#include "chaoskit/periodic.hpp"

using namespace chaoskit;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        notes.push_back(what);
    }
}

struct Criterion {
    const char* name;
    std::function<void()> body;
};

double bisect(const std::function<double(double)>& p, double lo, double hi) {
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        double mid = 0.5 * (lo + hi);
        (p(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Rat pow3(unsigned k) {
    mpz_class v = 1;
    for (unsigned i = 0; i < k; ++i) v *= 3;
    return Rat(v);
}

void criterion1() {
    double h = entropy_markov(tent(2), {Rat(0), Rat(1, 2), Rat(1)});
    expect(std::abs(h - std::log(2.0)) <= 1e-9, "markov entropy of T_2 != log 2");
    for (unsigned n = 1; n <= 12; ++n) {
        expect(lap_count(tent(2), n) == (std::size_t(1) << n), "lap count of T_2^n != 2^n");
        expect(std::abs(entropy_upper_lap(tent(2), n) - std::log(2.0)) <= 1e-12,
               "lap bound of T_2 != log 2 at n = " + std::to_string(n));
    }
    expect(std::abs(entropy_upper_lipschitz(tent(2)) - std::log(2.0)) <= 1e-12,
           "Lipschitz bound of T_2 != log 2");
}

void criterion2() {
    double h = entropy_markov(s_map(), {Rat(-1), Rat(-1, 2), Rat(0), Rat(1)});
    expect(std::abs(h - std::log(2.0) / 2) <= 1e-9, "markov entropy of S != (log 2)/2");
}

void criterion3() {
    double lam3 = bisect([](double x) { return x * x * x - 2 * x - 1; }, 1.0, 2.0);
    double h = entropy_markov(stefan_map(3), {Rat(0), Rat(1), Rat(2)});
    expect(std::abs(h - std::log(lam3)) <= 1e-9, "Stefan entropy != log((1+sqrt 5)/2)");
    expect(std::abs(lam3 - (1 + std::sqrt(5.0)) / 2) <= 1e-12, "oracle root check failed");
}

void criterion4() {
    const double r2 = std::sqrt(2.0);
    double prev = 2.0; // above lambda_3
    for (unsigned q = 3; q <= 31; q += 2) {
        double lam = lambda_q(q, 1e-12);
        expect(lam > r2, "lambda_q <= sqrt 2 at q = " + std::to_string(q));
        expect(lam < prev, "lambda_q not decreasing at q = " + std::to_string(q));
        expect(lam < r2 + std::pow(r2, -static_cast<double>(q + 1)) + 1e-12,
               "lambda_q above the bracket at q = " + std::to_string(q));
        prev = lam;
    }
}

void criterion5() {
    for (unsigned p : {3u, 5u, 7u}) {
        expect(periods_up_to(stefan_map(p), 12) == sharkovsky_forced(p, 12),
               "period set of stefan_map(" + std::to_string(p) + ") wrong");
    }
    expect(periods_up_to(type_map(6), 12) == sharkovsky_forced(6, 12),
           "period set of type_map(6) wrong");
    expect(periods_up_to(type_map(4), 8) == std::set<unsigned>{1, 2, 4},
           "period set of type_map(4) wrong");
}

void criterion6() {
    PwlMap t2 = tent(2);
    PwlMap g = t2;
    for (unsigned n = 1; n <= 14; ++n) {
        if (n > 1) g = compose(t2, g);
        std::size_t count = fixed_sets(g).isolated.size();
        expect(count == (std::size_t(1) << n),
               "#fixed points of T_2^" + std::to_string(n) + " != 2^n");
    }
}

void criterion7() {
    auto h1 = horseshoe_search(tent(2), 1, 1);
    expect(h1.has_value() && h1->J == IntervalQ(Rat(0), Rat(1, 2)) &&
               h1->K == IntervalQ(Rat(1, 2), Rat(1)),
           "tent horseshoe ([0,1/2],[1/2,1]) not found");
    expect(!horseshoe_search(stefan_map(3), 1, 4).has_value(),
           "stefan_map(3) must have no horseshoe for f^1");
    expect(horseshoe_search(stefan_map(3), 2, 4).has_value(),
           "stefan_map(3) must have a horseshoe for f^2");
}

void criterion8() {
    PwlMap f = delahaye(8);
    Trajectory t = trajectory(f, Rat(0), 1 << 6, 128);
    expect(t.exact, "delahaye trajectory must run exactly");
    for (unsigned n = 1; n <= 6; ++n) {
        expect(t.values[(1u << n) - 1] == Rat(1) - Rat(1) / pow3(n),
               "f^(2^" + std::to_string(n) + "-1)(0) != 1 - 3^-" + std::to_string(n));
    }
    auto cycles = solenoid_scan(f, Rat(0), 3, 512);
    expect(cycles.size() == 4, "delahaye solenoid cycles of periods 1,2,4,8 not verified");
    for (std::size_t k = 0; k < cycles.size(); ++k)
        expect(cycles[k].period == (1u << k), "solenoid period mismatch");
    SharkovskyType ty = infer_type(f, 16);
    expect(!ty.finite && ty.value == 16, "delahaye type must be TwoInfinityCandidate(16)");
}

void criterion9() {
    for (unsigned p : {2u, 3u, 5u})
        expect(mixing_evidence(tent(p), Rat(1, 32), 5, 20).positive,
               "T_" + std::to_string(p) + " mixing evidence must be positive");
    PwlMap id = make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    expect(!mixing_evidence(id, Rat(1, 32), 5, 20).positive,
           "identity mixing evidence must be negative");
    expect(!mixing_evidence(s_map(), Rat(1, 32), 5, 20).positive,
           "S mixing evidence must be negative on the full interval");
    expect(sensitivity_evidence(tent(2), Rat(1, 4), 6, 20).positive,
           "T_2 sensitivity evidence must be positive");
}

void criterion10() {
    EvidenceVerdict t2 = dc_classify(tent(2), 50, 10000);
    expect(t2.kind == EvidenceKind::DC1, "T_2 must classify as DC1 evidence");

    PwlMap id = make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    expect(dc_classify(id, 50, 10000).kind == EvidenceKind::None,
           "identity must classify as None");
    expect(dc_classify(type2inf(4), 50, 10000).kind == EvidenceKind::None,
           "type2inf(4) must classify as None");

    // DistFns invariants on every computed pair
    std::mt19937_64 rng(123);
    for (const PwlMap& f : {tent(2), id, type2inf(4)}) {
        for (int i = 0; i < 6; ++i) {
            long q = 2147483647;
            Rat x = f.domain().lo +
                    Rat(static_cast<long>(rng() % (q - 2)) + 1, q) * f.domain().length();
            Rat y = f.domain().lo +
                    Rat(static_cast<long>(rng() % (q - 2)) + 1, q) * f.domain().length();
            DistFns d = dist_fns(f, x, y, 10000);
            for (std::size_t ti = 0; ti < d.t_grid.size(); ++ti) {
                expect(d.F_lower[ti] >= 0 && d.F_upper[ti] <= 1, "DistFns out of [0,1]");
                expect(d.F_lower[ti] <= d.F_upper[ti], "F_lower above F_upper");
                if (ti > 0) {
                    expect(d.F_lower[ti] >= d.F_lower[ti - 1], "F_lower not monotone");
                    expect(d.F_upper[ti] >= d.F_upper[ti - 1], "F_upper not monotone");
                }
            }
            expect(d.F_upper.back() == 1.0, "F_upper != 1 above the diameter");
        }
    }
}

void criterion11() {
    // exact iterate/eval agreement: 1e6 point-checks
    {
        std::mt19937_64 rng(7);
        std::vector<PwlMap> maps{tent(2), tent(3), stefan_map(3), s_map()};
        std::size_t checks = 0;
        for (const PwlMap& f : maps) {
            std::vector<PwlMap> iters{f};
            for (unsigned n = 2; n <= 10; ++n) iters.push_back(compose(f, iters.back()));
            Rat len = f.domain().length();
            for (int i = 0; i < 25000; ++i) {
                long den = static_cast<long>(rng() % 500000) * 2 + 1;
                Rat x = f.domain().lo + Rat(static_cast<long>(rng() % (den + 1)), den) * len;
                Rat y = x;
                for (unsigned n = 1; n <= 10; ++n) {
                    y = f.eval(y);
                    if (iters[n - 1].eval(x) != y) {
                        expect(false, "iterate/eval mismatch");
                        return;
                    }
                    ++checks;
                }
            }
        }
        expect(checks == 1000000, "point-check budget not reached");
    }
    // lap submultiplicativity (mizera grows like 4^n, keep it within budget)
    {
        std::vector<std::pair<PwlMap, unsigned>> cases{
            {tent(2), 10}, {tent(3), 10}, {stefan_map(3), 10}, {mizera(4), 8}};
        for (auto& [f, top] : cases) {
            std::vector<std::size_t> c{0};
            for (unsigned n = 1; n <= top; ++n) c.push_back(lap_count(f, n));
            for (unsigned n = 1; 2 * n <= top; ++n)
                for (unsigned k = 1; n + k <= top; ++k)
                    expect(c[n + k] <= c[n] * c[k], "lap submultiplicativity violated");
        }
    }
    // Sharkovsky total order axioms on [1,1000]
    {
        for (unsigned m = 1; m <= 1000; ++m) {
            expect(sharkovsky_leq(m, m), "reflexivity fails");
            for (unsigned n = m + 1; n <= 1000; n += 37)
                expect(sharkovsky_leq(m, n) != sharkovsky_leq(n, m), "totality/antisymmetry fails");
        }
        std::mt19937_64 rng(11);
        for (int i = 0; i < 10000; ++i) {
            unsigned a = rng() % 1000 + 1, b = rng() % 1000 + 1, c = rng() % 1000 + 1;
            if (sharkovsky_leq(a, b) && sharkovsky_leq(b, c))
                expect(sharkovsky_leq(a, c), "transitivity fails");
        }
    }
    // entrywise M(f|P) >= M(f_P)
    {
        std::vector<std::pair<PwlMap, std::vector<Rat>>> cases;
        cases.emplace_back(stefan_map(3), std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
        cases.emplace_back(stefan_map(5), std::vector<Rat>{Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)});
        cases.emplace_back(tent(2), std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1)});
        cases.emplace_back(tent(2), std::vector<Rat>{Rat(0), Rat(2, 7), Rat(4, 7), Rat(6, 7), Rat(1)});
        cases.emplace_back(tent(2), std::vector<Rat>{Rat(0), Rat(1)});
        for (auto& [f, P] : cases) {
            OrbitGraph og = build_orbit_graph(f, P);
            expect(og.full_matrix.dominates(og.ctd_matrix), "M(f|P) < M(f_P) somewhere");
            if (og.p_monotone)
                expect(og.full_matrix == og.ctd_matrix, "P-monotone but matrices differ");
        }
    }
    // path_count multiplicativity
    {
        AdjMatrix M = AdjMatrix::zero(3);
        M.at(0, 0) = 1;
        M.at(0, 1) = 2;
        M.at(1, 2) = 1;
        M.at(2, 0) = 1;
        for (unsigned n = 1; n <= 5; ++n)
            for (unsigned m = 1; m <= 5; ++m)
                expect(path_count(M, n + m) == mat_mul(path_count(M, n), path_count(M, m)),
                       "path_count multiplicativity fails");
    }
    // shift intervals: nesting and disjointness to depth 6
    {
        Horseshoe h{IntervalQ(Rat(0), Rat(1, 2)), IntervalQ(Rat(1, 2), Rat(1)), 1, false};
        auto fam = shift_intervals(tent(2), h, 6);
        for (const auto& [w, iv] : fam) {
            if (w.size() >= 2) {
                expect(fam.at(w.substr(0, w.size() - 1)).contains(iv), "prefix nesting fails");
                expect(tent(2).fn().image(iv) == fam.at(w.substr(1)), "shift rule fails");
            }
            for (const auto& [w2, iv2] : fam)
                if (w2.size() == w.size() && w2 != w)
                    expect(iv.interior_disjoint(iv2), "same-length words overlap");
        }
    }
    // square-root identity g^2 = f on [0,b]
    {
        std::mt19937_64 rng(13);
        for (const PwlMap& f :
             {stefan_map(3), make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}})}) {
            PwlMap g = square_root(f, f.domain().hi);
            Rat b = f.domain().hi;
            for (int i = 0; i < 50; ++i) {
                long den = static_cast<long>(rng() % 100000) * 2 + 1;
                Rat x = Rat(static_cast<long>(rng() % (den + 1)), den) * b;
                expect(g.eval(g.eval(x)) == f.eval(x), "square-root identity fails");
            }
        }
    }
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {"1. tent map entropy log 2 (markov, lap, Lipschitz)", criterion1},
        {"2. S map entropy (log 2)/2", criterion2},
        {"3. Stefan entropy log lambda_3 vs bisection oracle", criterion3},
        {"4. lambda_q bracketing for odd q in [3,31]", criterion4},
        {"5. Sharkovsky period sets of stefan/type maps", criterion5},
        {"6. periodic-point growth of the tent map (n <= 14)", criterion6},
        {"7. horseshoe search logic", criterion7},
        {"8. delahaye exactness, solenoid, type verdict", criterion8},
        {"9. mixing/sensitivity evidence matrix", criterion9},
        {"10. distributional chaos classification", criterion10},
        {"11. property suites", criterion11},
    };

    int failed = 0;
    for (auto& c : criteria) {
        int before = failures;
        notes.clear();
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.body();
        } catch (const std::exception& e) {
            ++failures;
            notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = failures == before;
        std::printf("[%s] %-55s (%.2fs)\n", ok ? "PASS" : "FAIL", c.name, secs);
        for (const auto& n : notes) std::printf("       - %s\n", n.c_str());
        if (!ok) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed;
}
