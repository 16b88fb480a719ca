#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "chaoskit/error.hpp"

namespace chaoskit {

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator (mpq_class canonical form).
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long n, long d) : q_(n, d) {
        if (d == 0) fail(Err::ParseError, "zero denominator");
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rat(const mpz_class& n) : q_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) : q_(n, d) {
        if (d == 0) fail(Err::ParseError, "zero denominator");
        q_.canonicalize();
    }

    /// Parses "p/q" or "p" (arbitrary precision, lowest terms on output).
    static Rat parse(const std::string& s);

    /// Exact value of a binary64 float (every finite double is a dyadic rational).
    static Rat from_double(double x);

    const mpq_class& mpq() const { return q_; }
    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    double to_double() const { return q_.get_d(); }
    std::string str() const;

    /// Bit length of the denominator (1 for integers).
    std::size_t den_bits() const { return mpz_sizeinbase(q_.get_den().get_mpz_t(), 2); }

    bool is_integer() const { return q_.get_den() == 1; }
    int sgn() const { return ::sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
    Rat operator/(const Rat& o) const {
        if (o.q_ == 0) fail(Err::ParseError, "division by zero");
        return Rat(mpq_class(q_ / o.q_));
    }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }

    bool operator==(const Rat& o) const { return q_ == o.q_; }
    bool operator!=(const Rat& o) const { return q_ != o.q_; }
    bool operator<(const Rat& o) const { return q_ < o.q_; }
    bool operator<=(const Rat& o) const { return q_ <= o.q_; }
    bool operator>(const Rat& o) const { return q_ > o.q_; }
    bool operator>=(const Rat& o) const { return q_ >= o.q_; }

    friend Rat abs(const Rat& r) { return Rat(mpq_class(::abs(r.q_))); }
    friend const Rat& min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
    friend const Rat& max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// Closed interval with exact rational endpoints, lo <= hi.
/// Degenerate intervals (lo == hi) are permitted and flagged.
struct IntervalQ {
    Rat lo;
    Rat hi;

    IntervalQ() = default;
    IntervalQ(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) fail(Err::IllFormed, "interval with lo > hi");
    }

    static IntervalQ hull_of(const Rat& a, const Rat& b) {
        return a <= b ? IntervalQ(a, b) : IntervalQ(b, a);
    }

    bool degenerate() const { return lo == hi; }
    Rat length() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / Rat(2); }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const IntervalQ& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const IntervalQ& o) const { return lo <= o.hi && o.lo <= hi; }
    /// Interiors disjoint: overlap is at most a point.
    bool interior_disjoint(const IntervalQ& o) const { return hi <= o.lo || o.hi <= lo; }
    /// Fully disjoint as closed sets.
    bool disjoint(const IntervalQ& o) const { return hi < o.lo || o.hi < lo; }

    IntervalQ hull(const IntervalQ& o) const { return IntervalQ(min(lo, o.lo), max(hi, o.hi)); }

    bool operator==(const IntervalQ& o) const { return lo == o.lo && hi == o.hi; }
    bool operator!=(const IntervalQ& o) const { return !(*this == o); }

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const IntervalQ& iv);

} // namespace chaoskit
