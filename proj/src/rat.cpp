#include "chaoskit/rat.hpp"

#include <cmath>
#include <ostream>

namespace chaoskit {

const char* err_name(Err e) {
    switch (e) {
        case Err::NodeOrder: return "NodeOrder";
        case Err::NotSelfMap: return "NotSelfMap";
        case Err::SpanMismatch: return "SpanMismatch";
        case Err::OutOfDomain: return "OutOfDomain";
        case Err::DomainMismatch: return "DomainMismatch";
        case Err::PieceBudgetExceeded: return "PieceBudgetExceeded";
        case Err::DenomBudgetExceeded: return "DenomBudgetExceeded";
        case Err::Degenerate: return "Degenerate";
        case Err::NotAChain: return "NotAChain";
        case Err::NestingFails: return "NestingFails";
        case Err::NotInvariant: return "NotInvariant";
        case Err::TooFewPoints: return "TooFewPoints";
        case Err::NotOddPeriod: return "NotOddPeriod";
        case Err::BoundTooLarge: return "BoundTooLarge";
        case Err::NotPMonotone: return "NotPMonotone";
        case Err::NonConvergence: return "NonConvergence";
        case Err::IllFormed: return "IllFormed";
        case Err::DepthRequired: return "DepthRequired";
        case Err::NotOdd: return "NotOdd";
        case Err::ParseError: return "ParseError";
        case Err::PrecisionExhausted: return "PrecisionExhausted";
    }
    return "Unknown";
}

Rat Rat::parse(const std::string& s) {
    if (s.empty()) fail(Err::ParseError, "empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(mpz_class(s));
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) fail(Err::ParseError, "zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        fail(Err::ParseError, "bad rational '" + s + "'");
    }
}

Rat Rat::from_double(double x) {
    if (!std::isfinite(x)) fail(Err::ParseError, "non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rat(q);
}

std::string Rat::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

std::string IntervalQ::str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

std::ostream& operator<<(std::ostream& os, const IntervalQ& iv) { return os << iv.str(); }

} // namespace chaoskit
