#pragma once

#include <set>
#include <string>
#include <vector>

#include "chaoskit/periodic.hpp"
#include "chaoskit/pwl.hpp"

namespace chaoskit {

/// Nonnegative integer adjacency matrix with exact (big integer) entries,
/// so path counts never overflow.
struct AdjMatrix {
    std::size_t n = 0;
    std::vector<mpz_class> e; // row-major, e[i*n+j] = arrows i -> j

    static AdjMatrix zero(std::size_t n) {
        AdjMatrix m;
        m.n = n;
        m.e.assign(n * n, mpz_class(0));
        return m;
    }
    mpz_class& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
    bool operator==(const AdjMatrix& o) const { return n == o.n && e == o.e; }
    /// Entrywise >=.
    bool dominates(const AdjMatrix& o) const;
};

/// Exact matrix power; entry (i,j) of M^n counts paths of length n.
AdjMatrix path_count(const AdjMatrix& M, unsigned n);

AdjMatrix mat_mul(const AdjMatrix& A, const AdjMatrix& B);

/// DOT-format text of the directed multigraph (for visualization tools).
std::string to_dot(const AdjMatrix& M);

/// Covering graphs of a finite invariant set P: full arrow counts M(f|P)
/// via covering multiplicities, and the connect-the-dots graph M(f_P) from
/// endpoint images alone.
struct OrbitGraph {
    std::vector<Rat> p_points;
    std::vector<IntervalQ> intervals;
    AdjMatrix full_matrix; // M(f|P)
    AdjMatrix ctd_matrix;  // M(f_P)
    bool p_monotone = false;
};

OrbitGraph build_orbit_graph(const PwlMap& f, std::vector<Rat> P);

/// The unique P-linear map agreeing with f on P.
PwlMap connect_the_dots(const PwlMap& f, const std::vector<Rat>& P);

/// The fundamental cycle of the orbit graph: the length-p vertex sequence
/// traced from the leftmost orbit point (J_0 = I_1, c = x_1); exactly one
/// vertex appears twice. Returned as 0-based P-interval indices.
std::vector<std::size_t> fundamental_cycle(const PwlMap& f, const PeriodicOrbit& orbit);

/// All lengths <= L of primitive (non-repetition) cycles, by depth-first
/// enumeration of closed walks. L is capped at 20.
std::set<unsigned> primitive_cycle_lengths(const AdjMatrix& M, unsigned L);

/// Spatial Stefan-cycle test: the orbit spirals around its median point.
bool is_stefan_orbit(const PeriodicOrbit& orbit);

} // namespace chaoskit
