#include <doctest.h>

#include "chaoskit/families.hpp"
#include "chaoskit/pwl.hpp"
#include "helpers.hpp"

using namespace chaoskit;
using testutil::random_unit_rat;

namespace {

PwlMap identity_map() {
    return make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
}

} // namespace

TEST_CASE("make_pwl builds and validates") {
    PwlMap t2 = make_pwl(IntervalQ(Rat(0), Rat(1)),
                         {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(0)}});
    CHECK(t2 == tent(2));
    CHECK(t2.piece_count() == 2);

    CHECK_NOTHROW(identity_map());

    CHECK_THROWS_AS(make_pwl(IntervalQ(Rat(0), Rat(1)),
                             {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(2)}, {Rat(1), Rat(0)}}),
                    Error); // NotSelfMap: 2 outside [0,1]
    try {
        make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(2)}, {Rat(1), Rat(0)}});
    } catch (const Error& e) {
        CHECK(e.code() == Err::NotSelfMap);
    }
    try {
        make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}});
    } catch (const Error& e) {
        CHECK(e.code() == Err::SpanMismatch);
    }
    try {
        make_pwl(IntervalQ(Rat(0), Rat(1)),
                 {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(0)}});
    } catch (const Error& e) {
        CHECK(e.code() == Err::NodeOrder);
    }
}

TEST_CASE("collinear interior nodes are canonicalized away") {
    PwlMap m = make_pwl(IntervalQ(Rat(0), Rat(1)),
                        {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 4)}, {Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(1)}});
    CHECK(m.piece_count() == 1);
    CHECK(m == identity_map());
}

TEST_CASE("eval is exact") {
    PwlMap t2 = tent(2);
    CHECK(t2.eval(Rat(1, 2)) == Rat(1));
    CHECK(t2.eval(Rat(2, 3)) == Rat(2, 3)); // fixed point
    CHECK(t2.eval(Rat(1, 3)) == Rat(2, 3));
    PwlMap id = identity_map();
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        Rat q = random_unit_rat(rng);
        CHECK(id.eval(q) == q);
    }
    CHECK_THROWS_AS(t2.eval(Rat(2)), Error);
}

TEST_CASE("image computes exact min/max") {
    PwlMap t2 = tent(2);
    CHECK(image(t2, IntervalQ(Rat(0), Rat(1, 4))) == IntervalQ(Rat(0), Rat(1, 2)));
    CHECK(image(t2, IntervalQ(Rat(1, 4), Rat(3, 4))) == IntervalQ(Rat(1, 2), Rat(1)));
    CHECK(image(t2, IntervalQ(Rat(0), Rat(1))) == IntervalQ(Rat(0), Rat(1)));
}

TEST_CASE("image monotone in the interval argument") {
    PwlMap f = stefan_map(5);
    std::mt19937_64 rng(11);
    Rat span = f.domain().length();
    for (int i = 0; i < 50; ++i) {
        Rat a = f.domain().lo + random_unit_rat(rng) * span;
        Rat b = f.domain().lo + random_unit_rat(rng) * span;
        Rat c = f.domain().lo + random_unit_rat(rng) * span;
        Rat d = f.domain().lo + random_unit_rat(rng) * span;
        IntervalQ inner = IntervalQ::hull_of(a, b);
        IntervalQ outer = inner.hull(IntervalQ::hull_of(c, d));
        CHECK(image(f, outer).contains(image(f, inner)));
    }
}

TEST_CASE("compose: tent squared has 4 laps onto [0,1]") {
    PwlMap t2 = tent(2);
    PwlMap t4 = compose(t2, t2);
    CHECK(lap_count_fn(t4.fn()) == 4);
    // each lap maps onto [0,1]
    const auto& nodes = t4.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        CHECK(image(t4, IntervalQ(nodes[i].x, nodes[i + 1].x)) == IntervalQ(Rat(0), Rat(1)));

    CHECK(compose(identity_map(), t2) == t2);
    CHECK(compose(t2, identity_map()) == t2);
}

TEST_CASE("compose agrees with pointwise composition") {
    PwlMap f = stefan_map(3);
    PwlMap g = compose(f, f);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        Rat x = random_unit_rat(rng) * Rat(2);
        CHECK(g.eval(x) == f.eval(f.eval(x)));
    }
}

TEST_CASE("iterate: lap growth and exact evaluation") {
    PwlMap t2 = tent(2);
    CHECK(lap_count_fn(iterate(t2, 3).fn()) == 8);
    CHECK(iterate(t2, 1) == t2);

    PwlMap t10 = iterate(t2, 10);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Rat x = random_unit_rat(rng);
        Rat y = x;
        for (int k = 0; k < 10; ++k) y = t2.eval(y);
        CHECK(t10.eval(x) == y);
    }
}

TEST_CASE("compose rejects range/domain mismatches") {
    // S lives on [-1,1]; its range does not fit inside [0,1]
    try {
        compose(tent(2), s_map());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Err::DomainMismatch);
    }
    try {
        image(tent(2), IntervalQ(Rat(1, 2), Rat(2)));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Err::OutOfDomain);
    }
}

TEST_CASE("piece budget enforced") {
    Budgets tiny;
    tiny.max_pieces = 16;
    CHECK_THROWS_AS(iterate(tent(2), 8, tiny), Error);
    try {
        iterate(tent(2), 8, tiny);
    } catch (const Error& e) {
        CHECK(e.code() == Err::PieceBudgetExceeded);
    }
}

TEST_CASE("covers_count") {
    PwlMap t2 = tent(2);
    PwlMap id = identity_map();
    IntervalQ unit(Rat(0), Rat(1));
    CHECK(covers_count(t2, unit, unit) == 2);
    CHECK(covers_count(t2, IntervalQ(Rat(0), Rat(1, 2)), unit) == 1);
    CHECK(covers_count(id, unit, IntervalQ(Rat(0), Rat(1, 2))) == 1);
    CHECK(covers_count(id, IntervalQ(Rat(0), Rat(1, 2)), IntervalQ(Rat(3, 4), Rat(1))) == 0);
    CHECK_THROWS_AS(covers_count(t2, unit, IntervalQ(Rat(1, 2), Rat(1, 2))), Error);

    // T_p covers [0,1] p times
    for (unsigned p : {3u, 4u, 5u}) CHECK(covers_count(tent(p), unit, unit) == p);
    // horseshoe iterates: J covers K p^{n-1} times for f^n
    CHECK(covers_count(iterate(t2, 3), unit, unit) == 8);
}

TEST_CASE("lap_count") {
    for (unsigned n = 1; n <= 14; ++n) CHECK(lap_count(tent(2), n) == (std::size_t(1) << n));
    CHECK(lap_count(identity_map(), 5) == 1);
    CHECK(lap_count(tent(3), 2) == 9);
    // constant pieces count as laps
    PwlMap flat = make_pwl(IntervalQ(Rat(0), Rat(1)),
                           {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(3, 4), Rat(1, 2)}, {Rat(1), Rat(0)}});
    CHECK(lap_count(flat, 1) == 3);
}

TEST_CASE("lap submultiplicativity") {
    for (const PwlMap& f : {tent(2), tent(3), stefan_map(3), s_map()}) {
        std::vector<std::size_t> c{0};
        for (unsigned n = 1; n <= 8; ++n) c.push_back(lap_count(f, n));
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned k = 1; k <= 4; ++k) CHECK(c[n + k] <= c[n] * c[k]);
    }
}

TEST_CASE("follow_chain solves two-step chains exactly") {
    PwlMap t2 = tent(2);
    IntervalQ lo(Rat(0), Rat(1, 2)), hi(Rat(1, 2), Rat(1));
    CHECK(follow_chain(t2, {lo, lo}) == IntervalQ(Rat(0), Rat(1, 4)));
    CHECK(follow_chain(t2, {hi, lo}) == IntervalQ(Rat(3, 4), Rat(1)));
    CHECK(follow_chain(t2, {IntervalQ(Rat(1, 5), Rat(2, 5))}) == IntervalQ(Rat(1, 5), Rat(2, 5)));
    CHECK_THROWS_AS(follow_chain(t2, {IntervalQ(Rat(0), Rat(1, 8)), hi}), Error); // not a chain
}

TEST_CASE("follow_chain postconditions re-verified by direct images") {
    PwlMap f = stefan_map(3);
    std::vector<IntervalQ> chain{IntervalQ(Rat(0), Rat(1)), IntervalQ(Rat(1), Rat(2)),
                                 IntervalQ(Rat(0), Rat(1)), IntervalQ(Rat(1), Rat(2))};
    IntervalQ K = follow_chain(f, chain);
    CHECK(chain[0].contains(K));
    IntervalQ cur = K;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        cur = image(f, cur);
        CHECK(chain[i].contains(cur));
    }
    CHECK(cur == chain.back()); // exactly onto
}

TEST_CASE("chain_fixed_point finds exact periodic points") {
    PwlMap t2 = tent(2);
    IntervalQ lo(Rat(0), Rat(1, 2)), hi(Rat(1, 2), Rat(1));
    CHECK(chain_fixed_point(t2, {hi, hi}) == Rat(2, 3));
    CHECK(chain_fixed_point(t2, {lo, hi, lo}) == Rat(2, 5)); // period-2 point

    PwlMap id = make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    Rat x = chain_fixed_point(id, {IntervalQ(Rat(0), Rat(1))});
    CHECK(id.eval(x) == x);

    // fixed-point equation holds exactly, no tolerance
    PwlMap f = stefan_map(5);
    std::vector<IntervalQ> chain{IntervalQ(Rat(1), Rat(2)), IntervalQ(Rat(1), Rat(3)),
                                 IntervalQ(Rat(0), Rat(2))};
    for (std::size_t i = 1; i < chain.size(); ++i) REQUIRE(image(f, chain[i - 1]).contains(chain[i]));
    REQUIRE(chain.back().contains(chain.front()));
    Rat p = chain_fixed_point(f, chain);
    Rat y = p;
    for (int i = 0; i < 2; ++i) y = f.eval(y);
    CHECK(y == p);

    CHECK_THROWS_AS(chain_fixed_point(t2, {lo, hi}), Error); // nesting fails
}

TEST_CASE("onto_subinterval maps exactly onto the target") {
    PwlMap t8 = iterate(tent(2), 3);
    IntervalQ target(Rat(1, 3), Rat(5, 7));
    IntervalQ K = onto_subinterval(t8.fn(), IntervalQ(Rat(0), Rat(1)), target);
    CHECK(t8.fn().image(K) == target);
}

TEST_CASE("exactness stress: denominators survive deep iteration") {
    // slope-2 maps annihilate dyadic seeds but preserve odd denominators
    PwlMap t2 = tent(2);
    Rat x(1, (1 << 20) + 1);
    for (int i = 0; i < 200; ++i) x = t2.eval(x);
    CHECK(x.den() > 1);
    CHECK(x.den() % 2 == 1);
}
