#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chaoskit/rat.hpp"

namespace chaoskit {

/// Piece/denominator budgets for exact composition. Composition multiplies
/// denominators, so growth is capped with a hard error instead of rounding.
struct Budgets {
    std::size_t max_pieces = 2'000'000;
    std::size_t max_den_bits = 4096;
};

struct Node {
    Rat x;
    Rat y;
    bool operator==(const Node& o) const { return x == o.x && y == o.y; }
};

/// Continuous piecewise-linear function given by its breakpoint nodes,
/// without the self-map requirement. Used for restrictions and the chain
/// machinery; PwlMap wraps the validated self-map case.
class PwlFn {
public:
    PwlFn() = default;
    /// Nodes must be strictly increasing in x; collinear interior nodes are
    /// merged so the stored pieces are the true breakpoints.
    static PwlFn make(std::vector<Node> nodes, const Budgets& budgets = {});

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t piece_count() const { return nodes_.size() - 1; }
    IntervalQ domain() const { return IntervalQ(nodes_.front().x, nodes_.back().x); }
    IntervalQ range() const;

    Rat eval(const Rat& x) const;
    IntervalQ image(const IntervalQ& J) const;
    PwlFn restrict_to(const IntervalQ& J) const;

    bool monotone_on(const IntervalQ& J) const;

    /// Exact level set {x : f(x) == level}, as sorted closed intervals
    /// (isolated solutions are degenerate intervals, constant pieces at the
    /// level contribute segments).
    std::vector<IntervalQ> level_set(const Rat& level) const;
    /// Region {x : f(x) <= level} (ge = false) or {x : f(x) >= level}.
    std::vector<IntervalQ> level_region(const Rat& level, bool ge) const;

    /// Largest |slope| over all pieces.
    Rat max_abs_slope() const;

    bool operator==(const PwlFn& o) const { return nodes_ == o.nodes_; }

private:
    std::vector<Node> nodes_; // strictly increasing x, canonical (no collinear interior nodes)
    std::size_t piece_index(const Rat& x) const;
    friend PwlFn compose_fn(const PwlFn& f, const PwlFn& g, const Budgets& budgets);
};

/// f o g on g's domain. Breakpoints of the result are g's breakpoints plus
/// the g-preimages of f's breakpoints, then canonicalized, so the piece
/// count tracks the true lap number instead of a naive product.
PwlFn compose_fn(const PwlFn& f, const PwlFn& g, const Budgets& budgets = {});

/// Continuous piecewise-linear self-map of a compact rational interval.
class PwlMap {
public:
    PwlMap() = default;

    const IntervalQ& domain() const { return domain_; }
    const std::vector<Node>& nodes() const { return fn_.nodes(); }
    const PwlFn& fn() const { return fn_; }
    std::size_t piece_count() const { return fn_.piece_count(); }

    Rat eval(const Rat& x) const;
    bool operator==(const PwlMap& o) const { return domain_ == o.domain_ && fn_ == o.fn_; }

    std::string str() const;

private:
    IntervalQ domain_;
    PwlFn fn_;
    friend PwlMap make_pwl(const IntervalQ& domain, std::vector<Node> nodes, const Budgets& budgets);
};

/// Validates and canonicalizes a self-map: nodes strictly increasing and
/// spanning the domain, every value inside the domain.
PwlMap make_pwl(const IntervalQ& domain, std::vector<Node> nodes, const Budgets& budgets = {});

Rat eval(const PwlMap& f, const Rat& x);
IntervalQ image(const PwlMap& f, const IntervalQ& J);
PwlMap compose(const PwlMap& f, const PwlMap& g, const Budgets& budgets = {});
PwlMap iterate(const PwlMap& f, unsigned n, const Budgets& budgets = {});

/// Maximal k such that J contains k closed subintervals with pairwise
/// disjoint interiors, each of which f maps onto a superset of K.
unsigned covers_count(const PwlMap& f, const IntervalQ& J, const IntervalQ& K);

/// Number of maximal monotone laps of the canonicalized f^n. Maximal
/// constant pieces count as one lap each.
std::size_t lap_count(const PwlMap& f, unsigned n, const Budgets& budgets = {});
std::size_t lap_count_fn(const PwlFn& f);

/// Backward refinement along a covering chain: returns a closed K inside
/// chain.front() with f^n(K) = chain.back() exactly and f^i(K) inside
/// chain[i] for every i. The second element is f^n restricted to K.
struct ChainResult {
    IntervalQ K;
    PwlFn fn_on_K; // f^n restricted to K, onto chain.back()
};
ChainResult follow_chain_full(const PwlMap& f, const std::vector<IntervalQ>& chain,
                              const Budgets& budgets = {});
IntervalQ follow_chain(const PwlMap& f, const std::vector<IntervalQ>& chain,
                       const Budgets& budgets = {});

/// Exact rational x in chain.front() with f^n(x) = x and f^i(x) in chain[i],
/// for a covering chain whose first interval is contained in its last.
Rat chain_fixed_point(const PwlMap& f, const std::vector<IntervalQ>& chain,
                      const Budgets& budgets = {});

/// Minimal closed K inside source with g(K) = target exactly and the
/// endpoints of K mapped onto the endpoints of target (Fact-1 selection).
/// Requires target inside g(source).
IntervalQ onto_subinterval(const PwlFn& g, const IntervalQ& source, const IntervalQ& target);

} // namespace chaoskit
