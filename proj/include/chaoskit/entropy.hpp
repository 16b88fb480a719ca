#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chaoskit/markov.hpp"
#include "chaoskit/pwl.hpp"

namespace chaoskit {

/// Perron root of a nonnegative integer matrix. The matrix is decomposed
/// into strongly connected blocks; small blocks are solved by exact-sign
/// Sturm bisection on the characteristic polynomial, cross-checked against
/// power iteration.
double spectral_radius(const AdjMatrix& M, double tol = 1e-10);

/// h_top(f) = max(0, log lambda(M(f_P))) for a P-monotone map with finite
/// invariant P spanning the domain. Exact route, result in nats.
double entropy_markov(const PwlMap& f, const std::vector<Rat>& P, double tol = 1e-10);

struct EntropyLower {
    double value = 0.0;
    std::string witness = "trivial";
    std::vector<Rat> witness_orbit;
};

/// Lower bound: max over periodic orbits of period <= N of the
/// connect-the-dots Perron bound. Approaches h_top from below as N grows.
EntropyLower entropy_lower_sup(const PwlMap& f, unsigned N, const Budgets& budgets = {});

/// (1/n) log c_n, a rigorous upper bound for every n.
double entropy_upper_lap(const PwlMap& f, unsigned n, const Budgets& budgets = {});

/// log of max(1, Lipschitz constant) = log max(1, max |slope|).
double entropy_upper_lipschitz(const PwlMap& f);

/// Unique positive root of X^q - 2X^{q-2} - 1 (q odd >= 3) by exact-sign
/// bisection inside (sqrt 2, sqrt 2 + sqrt(2)^{-(q+1)}).
double lambda_q(unsigned q, double tol = 1e-12);

/// Sharp entropy bound forced by a period 2^d * q: (log lambda_q) / 2^d,
/// zero for powers of two.
double type_entropy_bound(unsigned period);

struct Horseshoe {
    IntervalQ J;
    IntervalQ K;
    unsigned power = 1; // horseshoe for f^power
    bool strict = false; // intervals fully disjoint (not just interiors)
};

/// Searches for a verified 2-horseshoe of f^n among P-intervals of the
/// breakpoints of f^n and their dyadic midpoint refinements (depth levels).
/// Absence means "not found at this depth", never nonexistence.
std::optional<Horseshoe> horseshoe_search(const PwlMap& f, unsigned n, unsigned depth,
                                          const Budgets& budgets = {});

/// Nested interval family indexed by binary words of length <= depth:
/// J_{wa} inside J_w, same-length words have disjoint interiors, and
/// f^power maps J_w exactly onto J_{shift w}.
std::map<std::string, IntervalQ> shift_intervals(const PwlMap& f, const Horseshoe& h,
                                                 unsigned depth, const Budgets& budgets = {});

/// (1/n) log of a greedy maximal (n,eps)-separated subset of a uniform
/// grid of seeds. Heuristic, no rigor claimed.
double bowen_estimate(const PwlMap& f, unsigned n, const Rat& eps, unsigned grid);

struct EntropyBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_witness;
    std::string upper_witness;
    bool exact = false; // lower == upper by the Markov route
};

} // namespace chaoskit
