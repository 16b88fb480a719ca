#include "chaoskit/families.hpp"

#include <algorithm>

namespace chaoskit {

PwlMap tent(unsigned p) {
    if (p < 2) fail(Err::IllFormed, "tent needs p >= 2");
    std::vector<Node> nodes;
    for (unsigned j = 0; j <= p; ++j)
        nodes.push_back({Rat(j, p), Rat(j % 2 == 0 ? 0 : 1)});
    return make_pwl(IntervalQ(Rat(0), Rat(1)), std::move(nodes));
}

PwlMap stefan_map(unsigned p) {
    if (p < 3 || p % 2 == 0) fail(Err::NotOdd, "stefan_map needs odd p >= 3");
    long n = (p - 1) / 2;
    // f(0)=2n, f(n-1)=n+1, f(n)=n-1, f(2n-1)=0, f(2n)=n; n=1 collapses nodes
    std::vector<Node> nodes;
    nodes.push_back({Rat(0), Rat(2 * n)});
    if (n > 1) nodes.push_back({Rat(n - 1), Rat(n + 1)});
    nodes.push_back({Rat(n), Rat(n - 1)});
    if (n > 1) nodes.push_back({Rat(2 * n - 1), Rat(0)});
    nodes.push_back({Rat(2 * n), Rat(n)});
    return make_pwl(IntervalQ(Rat(0), Rat(2 * n)), std::move(nodes));
}

PwlMap square_root(const PwlMap& f, const Rat& delta) {
    if (f.domain().lo != Rat(0)) fail(Err::IllFormed, "square root needs domain [0,b]");
    Rat b = f.domain().hi;
    if (delta <= Rat(0))
        fail(Err::IllFormed,
             "square root needs delta > 0 (delta = 0 leaves a jump of f(b)+b at x = b)");
    Rat shift = b + delta;
    std::vector<Node> nodes;
    for (const Node& nd : f.nodes()) nodes.push_back({nd.x, nd.y + shift});
    nodes.push_back({shift, Rat(0)});
    nodes.push_back({Rat(2) * b + delta, b});
    return make_pwl(IntervalQ(Rat(0), Rat(2) * b + delta), std::move(nodes));
}

PwlMap type_map(unsigned n) {
    if (n == 0) fail(Err::IllFormed, "type_map needs n >= 1");
    unsigned d = 0, q = n;
    while (q % 2 == 0) {
        q /= 2;
        ++d;
    }
    PwlMap m;
    if (q == 1)
        m = make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
    else
        m = stefan_map(q);
    for (unsigned i = 0; i < d; ++i) m = square_root(m, m.domain().hi);
    return m;
}

PwlMap s_map() {
    return make_pwl(IntervalQ(Rat(-1), Rat(1)),
                    {{Rat(-1), Rat(0)}, {Rat(-1, 2), Rat(1)}, {Rat(0), Rat(0)}, {Rat(1), Rat(-1)}});
}

namespace {

Rat pow3(unsigned k) {
    mpz_class v = 1;
    for (unsigned i = 0; i < k; ++i) v *= 3;
    return Rat(v);
}

} // namespace

PwlMap type2inf(unsigned depth) {
    if (depth < 2) fail(Err::DepthRequired, "type2inf needs depth >= 2");
    std::vector<Node> nodes;
    for (unsigned n = 0; n <= depth; ++n) {
        // I_n = [1 - 3^-n, 1 - 2*3^-(n+1)], length 3^-(n+1)
        Rat a = Rat(1) - Rat(1) / pow3(n);
        Rat len = Rat(1) / pow3(n + 1);
        PwlMap block = type_map(1u << n);
        Rat scale = len / block.domain().hi;
        for (const Node& nd : block.nodes()) nodes.push_back({a + nd.x * scale, a + nd.y * scale});
        // the bridge to the next block is the linear interpolation to its first node
    }
    nodes.push_back({Rat(1), Rat(1)});
    return make_pwl(IntervalQ(Rat(0), Rat(1)), std::move(nodes));
}

PwlMap delahaye(unsigned depth) {
    if (depth < 2) fail(Err::DepthRequired, "delahaye needs depth >= 2");
    std::vector<Node> nodes;
    nodes.push_back({Rat(0), Rat(2, 3)});
    for (unsigned n = 1; n <= depth; ++n) {
        nodes.push_back({Rat(1) - Rat(2) / pow3(n), Rat(1) / pow3(n - 1)});
        nodes.push_back({Rat(1) - Rat(1) / pow3(n), Rat(2) / pow3(n + 1)});
    }
    nodes.push_back({Rat(1), Rat(0)});
    return make_pwl(IntervalQ(Rat(0), Rat(1)), std::move(nodes));
}

PwlMap mizera(unsigned depth) {
    if (depth < 2) fail(Err::DepthRequired, "mizera needs depth >= 2");
    std::vector<Node> nodes;
    for (unsigned n = 0; n <= depth; ++n) {
        Rat a = Rat(1) - Rat(1) / pow3(n);                    // fixed point
        Rat b = Rat(1) - Rat(1) / (Rat(4) * pow3(n) / Rat(3)); // peak, f(b) = 1
        Rat c = Rat(1) - Rat(1) / (Rat(2) * pow3(n));          // valley, f(c) = a
        nodes.push_back({a, a});
        nodes.push_back({b, Rat(1)});
        nodes.push_back({c, a});
    }
    nodes.push_back({Rat(1), Rat(1)});
    return make_pwl(IntervalQ(Rat(0), Rat(1)), std::move(nodes));
}

PwlMap truncated_tent(const Rat& lambda) {
    if (lambda < Rat(0) || lambda > Rat(1)) fail(Err::IllFormed, "lambda must be in [0,1]");
    if (lambda == Rat(0))
        return make_pwl(IntervalQ(Rat(0), Rat(1)), {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
    if (lambda == Rat(1)) return tent(2);
    Rat half = lambda / Rat(2);
    return make_pwl(IntervalQ(Rat(0), Rat(1)),
                    {{Rat(0), Rat(0)}, {half, lambda}, {Rat(1) - half, lambda}, {Rat(1), Rat(0)}});
}

namespace {

unsigned parse_uint(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        fail(Err::ParseError, "bad " + what + " '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

} // namespace

PwlMap catalog(const std::string& name) {
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);

    if (head == "smap") return s_map();
    if (head == "tent") return tent(parse_uint(arg, "tent slope"));
    if (head == "stefan") return stefan_map(parse_uint(arg, "stefan period"));
    if (head == "type") return type_map(parse_uint(arg, "type"));
    if (head == "sqrt") {
        if (arg.empty()) fail(Err::ParseError, "sqrt needs an inner map, e.g. sqrt:stefan:3");
        PwlMap inner = catalog(arg);
        return square_root(inner, inner.domain().hi);
    }
    if (head == "type2inf" || head == "delahaye" || head == "mizera") {
        if (arg.empty()) fail(Err::DepthRequired, head + " needs a truncation depth");
        unsigned depth = parse_uint(arg, "depth");
        if (head == "type2inf") return type2inf(depth);
        if (head == "delahaye") return delahaye(depth);
        return mizera(depth);
    }
    if (head == "ttent") {
        if (arg.empty()) fail(Err::ParseError, "ttent needs a level, e.g. ttent:3/4");
        return truncated_tent(Rat::parse(arg));
    }
    fail(Err::ParseError, "unknown catalog map '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"tent:p",     "stefan:p",     "sqrt:<inner>", "type:n", "type2inf:depth",
            "delahaye:depth", "mizera:depth", "smap",         "ttent:p/q"};
}

} // namespace chaoskit
