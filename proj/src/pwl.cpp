#include "chaoskit/pwl.hpp"

#include <algorithm>
#include <sstream>

#include "chaoskit/par.hpp"

namespace chaoskit {

namespace {

void check_budget_nodes(const std::vector<Node>& nodes, const Budgets& b) {
    if (nodes.size() > b.max_pieces + 1)
        fail(Err::PieceBudgetExceeded,
             "piece count " + std::to_string(nodes.size() - 1) + " exceeds budget " +
                 std::to_string(b.max_pieces));
    for (const Node& n : nodes) {
        if (n.x.den_bits() > b.max_den_bits || n.y.den_bits() > b.max_den_bits)
            fail(Err::DenomBudgetExceeded,
                 "node denominator exceeds " + std::to_string(b.max_den_bits) + " bits");
    }
}

// Removes interior nodes collinear with their neighbours; exact test.
std::vector<Node> canonicalize(std::vector<Node> nodes) {
    if (nodes.size() < 3) return nodes;
    std::vector<Node> out;
    out.reserve(nodes.size());
    out.push_back(nodes.front());
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        const Node& a = out.back();
        const Node& b = nodes[i];
        const Node& c = nodes[i + 1];
        // collinear iff (b.y-a.y)*(c.x-b.x) == (c.y-b.y)*(b.x-a.x)
        if ((b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x)) continue;
        out.push_back(b);
    }
    out.push_back(nodes.back());
    return out;
}

} // namespace

PwlFn PwlFn::make(std::vector<Node> nodes, const Budgets& budgets) {
    if (nodes.size() < 2) fail(Err::TooFewPoints, "need at least 2 nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i - 1].x < nodes[i].x))
            fail(Err::NodeOrder, "node x coordinates must be strictly increasing");
    PwlFn fn;
    fn.nodes_ = canonicalize(std::move(nodes));
    check_budget_nodes(fn.nodes_, budgets);
    return fn;
}

std::size_t PwlFn::piece_index(const Rat& x) const {
    // last i with nodes_[i].x <= x, clamped to a valid piece
    std::size_t lo = 0, hi = nodes_.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (nodes_[mid].x <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Rat PwlFn::eval(const Rat& x) const {
    if (x < nodes_.front().x || x > nodes_.back().x)
        fail(Err::OutOfDomain, "eval at " + x.str() + " outside " + domain().str());
    std::size_t i = piece_index(x);
    const Node& a = nodes_[i];
    const Node& b = nodes_[i + 1];
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

IntervalQ PwlFn::range() const {
    Rat lo = nodes_.front().y, hi = nodes_.front().y;
    for (const Node& n : nodes_) {
        if (n.y < lo) lo = n.y;
        if (n.y > hi) hi = n.y;
    }
    return IntervalQ(lo, hi);
}

IntervalQ PwlFn::image(const IntervalQ& J) const {
    if (J.lo < nodes_.front().x || J.hi > nodes_.back().x)
        fail(Err::OutOfDomain, "image of " + J.str() + " outside " + domain().str());
    Rat lo = eval(J.lo), hi = lo;
    Rat right = eval(J.hi);
    if (right < lo) lo = right;
    if (right > hi) hi = right;
    // interior nodes
    std::size_t i = piece_index(J.lo);
    for (std::size_t k = i + 1; k < nodes_.size() && nodes_[k].x < J.hi; ++k) {
        if (nodes_[k].x <= J.lo) continue;
        if (nodes_[k].y < lo) lo = nodes_[k].y;
        if (nodes_[k].y > hi) hi = nodes_[k].y;
    }
    return IntervalQ(lo, hi);
}

PwlFn PwlFn::restrict_to(const IntervalQ& J) const {
    if (J.degenerate()) fail(Err::Degenerate, "cannot restrict to a point");
    if (J.lo < nodes_.front().x || J.hi > nodes_.back().x)
        fail(Err::OutOfDomain, "restriction outside domain");
    std::vector<Node> out;
    out.push_back({J.lo, eval(J.lo)});
    std::size_t i = piece_index(J.lo);
    for (std::size_t k = i + 1; k < nodes_.size() && nodes_[k].x < J.hi; ++k) {
        if (nodes_[k].x <= J.lo) continue;
        out.push_back(nodes_[k]);
    }
    out.push_back({J.hi, eval(J.hi)});
    PwlFn fn;
    fn.nodes_ = canonicalize(std::move(out));
    return fn;
}

bool PwlFn::monotone_on(const IntervalQ& J) const {
    PwlFn r = restrict_to(J);
    int dir = 0;
    for (std::size_t i = 0; i + 1 < r.nodes_.size(); ++i) {
        int d = (r.nodes_[i + 1].y - r.nodes_[i].y).sgn();
        if (d == 0) continue;
        if (dir == 0)
            dir = d;
        else if (d != dir)
            return false;
    }
    return true;
}

std::vector<IntervalQ> PwlFn::level_set(const Rat& level) const {
    std::vector<IntervalQ> out;
    auto push = [&out](const Rat& lo, const Rat& hi) {
        if (!out.empty() && out.back().hi >= lo) {
            out.back().hi = max(out.back().hi, hi);
            return;
        }
        out.emplace_back(lo, hi);
    };
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const Node& a = nodes_[i];
        const Node& b = nodes_[i + 1];
        if (a.y == b.y) {
            if (a.y == level) push(a.x, b.x);
            continue;
        }
        const Rat& ylo = a.y < b.y ? a.y : b.y;
        const Rat& yhi = a.y < b.y ? b.y : a.y;
        if (level < ylo || level > yhi) continue;
        Rat x = a.x + (level - a.y) * (b.x - a.x) / (b.y - a.y);
        push(x, x);
    }
    return out;
}

std::vector<IntervalQ> PwlFn::level_region(const Rat& level, bool ge) const {
    std::vector<IntervalQ> out;
    auto push = [&out](const Rat& lo, const Rat& hi) {
        if (!out.empty() && out.back().hi >= lo) {
            out.back().hi = max(out.back().hi, hi);
            return;
        }
        out.emplace_back(lo, hi);
    };
    auto ok = [&](const Rat& y) { return ge ? y >= level : y <= level; };
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const Node& a = nodes_[i];
        const Node& b = nodes_[i + 1];
        bool oa = ok(a.y), ob = ok(b.y);
        if (oa && ob) {
            push(a.x, b.x);
        } else if (oa || ob) {
            Rat x = a.x + (level - a.y) * (b.x - a.x) / (b.y - a.y);
            if (oa)
                push(a.x, x);
            else
                push(x, b.x);
        }
    }
    return out;
}

Rat PwlFn::max_abs_slope() const {
    Rat best(0);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        Rat s = abs((nodes_[i + 1].y - nodes_[i].y) / (nodes_[i + 1].x - nodes_[i].x));
        if (s > best) best = s;
    }
    return best;
}

PwlFn compose_fn(const PwlFn& f, const PwlFn& g, const Budgets& budgets) {
    IntervalQ grange = g.range();
    IntervalQ fdom = f.domain();
    if (!fdom.contains(grange))
        fail(Err::DomainMismatch, "range " + grange.str() + " not inside " + fdom.str());

    const auto& fn = f.nodes();
    std::vector<Node> out;
    out.push_back({g.nodes().front().x, f.eval(g.nodes().front().y)});
    for (std::size_t i = 0; i + 1 < g.nodes().size(); ++i) {
        const Node& a = g.nodes()[i];
        const Node& b = g.nodes()[i + 1];
        if (a.y != b.y) {
            const Rat& ylo = a.y < b.y ? a.y : b.y;
            const Rat& yhi = a.y < b.y ? b.y : a.y;
            // f breakpoints strictly inside the traversed value range
            auto lower = std::lower_bound(fn.begin(), fn.end(), ylo,
                                          [](const Node& n, const Rat& v) { return n.x <= v; });
            auto upper = std::lower_bound(fn.begin(), fn.end(), yhi,
                                          [](const Node& n, const Rat& v) { return n.x < v; });
            Rat dxdy = (b.x - a.x) / (b.y - a.y);
            if (a.y < b.y) {
                for (auto it = lower; it != upper; ++it)
                    out.push_back({a.x + (it->x - a.y) * dxdy, it->y});
            } else {
                for (auto it = std::make_reverse_iterator(upper);
                     it != std::make_reverse_iterator(lower); ++it)
                    out.push_back({a.x + (it->x - a.y) * dxdy, it->y});
            }
        }
        out.push_back({b.x, f.eval(b.y)});
        if (out.size() > budgets.max_pieces + 1)
            fail(Err::PieceBudgetExceeded, "composition exceeds piece budget");
    }
    return PwlFn::make(std::move(out), budgets);
}

PwlMap make_pwl(const IntervalQ& domain, std::vector<Node> nodes, const Budgets& budgets) {
    if (domain.degenerate()) fail(Err::SpanMismatch, "degenerate domain");
    if (nodes.size() < 2) fail(Err::TooFewPoints, "need at least 2 nodes");
    PwlFn fn = PwlFn::make(std::move(nodes), budgets);
    if (fn.nodes().front().x != domain.lo || fn.nodes().back().x != domain.hi)
        fail(Err::SpanMismatch, "nodes do not span the domain");
    for (const Node& n : fn.nodes())
        if (!domain.contains(n.y))
            fail(Err::NotSelfMap, "value " + n.y.str() + " outside " + domain.str());
    PwlMap m;
    m.domain_ = domain;
    m.fn_ = std::move(fn);
    return m;
}

Rat PwlMap::eval(const Rat& x) const { return fn_.eval(x); }

std::string PwlMap::str() const {
    std::ostringstream os;
    os << "pwl on " << domain_.str() << ":";
    for (const Node& n : fn_.nodes()) os << " (" << n.x << "," << n.y << ")";
    return os.str();
}

Rat eval(const PwlMap& f, const Rat& x) { return f.eval(x); }

IntervalQ image(const PwlMap& f, const IntervalQ& J) { return f.fn().image(J); }

PwlMap compose(const PwlMap& f, const PwlMap& g, const Budgets& budgets) {
    PwlFn h = compose_fn(f.fn(), g.fn(), budgets);
    return make_pwl(g.domain(), h.nodes(), budgets);
}

PwlMap iterate(const PwlMap& f, unsigned n, const Budgets& budgets) {
    if (n == 0) fail(Err::IllFormed, "iterate needs n >= 1");
    PwlMap g = f;
    for (unsigned i = 1; i < n; ++i) g = compose(f, g, budgets);
    return g;
}

unsigned covers_count(const PwlMap& f, const IntervalQ& J, const IntervalQ& K) {
    if (J.degenerate() || K.degenerate()) fail(Err::Degenerate, "covers_count needs non-degenerate intervals");
    if (!f.domain().contains(J) || !f.domain().contains(K))
        fail(Err::OutOfDomain, "covers_count intervals outside domain");
    PwlFn r = f.fn().restrict_to(J);
    std::vector<IntervalQ> low = r.level_region(K.lo, false);  // f <= K.lo
    std::vector<IntervalQ> high = r.level_region(K.hi, true);  // f >= K.hi

    // First position >= p inside one of the sorted closed regions.
    auto first_at_or_after = [](const std::vector<IntervalQ>& regs, const Rat& p) -> std::optional<Rat> {
        for (const IntervalQ& r : regs) {
            if (r.hi < p) continue;
            return max(r.lo, p);
        }
        return std::nullopt;
    };

    unsigned count = 0;
    Rat p = J.lo;
    for (;;) {
        auto a = first_at_or_after(low, p);
        auto d = first_at_or_after(high, p);
        if (!a || !d) break;
        p = max(*a, *d);
        ++count;
        // The shared endpoint may serve the next subinterval; progress is
        // guaranteed because no point satisfies both levels at once.
    }
    return count;
}

std::size_t lap_count_fn(const PwlFn& f) {
    const auto& n = f.nodes();
    std::size_t laps = 0;
    int prev = 2; // sentinel
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        int d = (n[i + 1].y - n[i].y).sgn();
        if (d != prev) {
            ++laps;
            prev = d;
        }
    }
    return laps;
}

std::size_t lap_count(const PwlMap& f, unsigned n, const Budgets& budgets) {
    return lap_count_fn(iterate(f, n, budgets).fn());
}

namespace {

// Fact-1 step: minimal closed K inside g's domain with g(K) = target exactly,
// g(endpoints of K) = endpoints of target and no interior point of K mapped
// to an endpoint of target. Deterministic min/max endpoint selection.
IntervalQ onto_preimage(const PwlFn& g, const IntervalQ& target) {
    if (target.degenerate()) {
        auto sols = g.level_set(target.lo);
        if (sols.empty()) fail(Err::NotAChain, "target value not attained");
        return IntervalQ(sols.front().lo, sols.front().lo);
    }
    auto A = g.level_set(target.lo);
    auto B = g.level_set(target.hi);
    if (A.empty() || B.empty()) fail(Err::NotAChain, "target not inside image");
    Rat x0 = A.front().lo;
    // B components never contain an A point, so each lies strictly left or right of x0.
    const IntervalQ* bright = nullptr;
    for (const auto& b : B)
        if (b.lo > x0) { bright = &b; break; }
    if (bright) {
        Rat yp = bright->lo; // min b-solution right of x0
        Rat xp = x0;
        for (const auto& a : A) {
            if (a.hi < yp) xp = a.hi;  // max a-solution left of y'
        }
        return IntervalQ(xp, yp);
    }
    // all b-solutions lie left of x0
    Rat ypp = B.back().hi;
    for (const auto& a : A) {
        if (a.lo > ypp) return IntervalQ(ypp, a.lo); // min a-solution right of y''
    }
    fail(Err::NotAChain, "covering structure broken");
}

PwlFn identity_on(const IntervalQ& J) {
    return PwlFn::make({{J.lo, J.lo}, {J.hi, J.hi}});
}

} // namespace

IntervalQ onto_subinterval(const PwlFn& g, const IntervalQ& source, const IntervalQ& target) {
    PwlFn r = g.restrict_to(source);
    if (!r.range().contains(target)) fail(Err::NotAChain, "target not inside image of source");
    return onto_preimage(r, target);
}

ChainResult follow_chain_full(const PwlMap& f, const std::vector<IntervalQ>& chain,
                              const Budgets& budgets) {
    if (chain.empty()) fail(Err::NotAChain, "empty chain");
    for (const IntervalQ& J : chain) {
        if (!f.domain().contains(J)) fail(Err::OutOfDomain, "chain interval outside domain");
        if (J.degenerate() && chain.size() > 1)
            fail(Err::Degenerate, "degenerate chain intervals are not supported");
    }
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!image(f, chain[i - 1]).contains(chain[i]))
            fail(Err::NotAChain, "covering fails at index " + std::to_string(i));

    IntervalQ K = chain.front();
    if (chain.size() == 1) return {K, identity_on(K)};
    PwlFn g = identity_on(K);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        PwlFn gf = compose_fn(f.fn(), g, budgets); // f^i on current K
        K = onto_preimage(gf, chain[i]);
        g = gf.restrict_to(K);
    }
    return {K, g};
}

IntervalQ follow_chain(const PwlMap& f, const std::vector<IntervalQ>& chain,
                       const Budgets& budgets) {
    return follow_chain_full(f, chain, budgets).K;
}

Rat chain_fixed_point(const PwlMap& f, const std::vector<IntervalQ>& chain,
                      const Budgets& budgets) {
    if (chain.empty()) fail(Err::NotAChain, "empty chain");
    if (!chain.back().contains(chain.front()))
        fail(Err::NestingFails, "chain start not contained in chain end");
    if (chain.size() == 1) return chain.front().lo;
    ChainResult res = follow_chain_full(f, chain, budgets);
    // g(K) = J_n contains J_0 contains K, so a diagonal crossing exists.
    const auto& nodes = res.fn_on_K.nodes();
    std::optional<Rat> best;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Node& a = nodes[i];
        const Node& b = nodes[i + 1];
        Rat dy = b.y - a.y, dx = b.x - a.x;
        if (dy == dx) { // slope 1
            if (a.y == a.x && (!best || a.x < *best)) best = a.x;
            continue;
        }
        Rat x = (a.y * dx - a.x * dy) / (dx - dy);
        if (x >= a.x && x <= b.x && (!best || x < *best)) best = x;
    }
    if (!best) fail(Err::NotAChain, "no fixed point on refined interval");
    return *best;
}

} // namespace chaoskit
