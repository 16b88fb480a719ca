#pragma once

#include <stdexcept>
#include <string>

namespace chaoskit {

enum class Err {
    NodeOrder,
    NotSelfMap,
    SpanMismatch,
    OutOfDomain,
    DomainMismatch,
    PieceBudgetExceeded,
    DenomBudgetExceeded,
    Degenerate,
    NotAChain,
    NestingFails,
    NotInvariant,
    TooFewPoints,
    NotOddPeriod,
    BoundTooLarge,
    NotPMonotone,
    NonConvergence,
    IllFormed,
    DepthRequired,
    NotOdd,
    ParseError,
    PrecisionExhausted,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace chaoskit
