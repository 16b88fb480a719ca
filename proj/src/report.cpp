#include "chaoskit/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chaoskit/families.hpp"
#include "chaoskit/markov.hpp"
#include "chaoskit/periodic.hpp"

namespace chaoskit {

using ordered_json = nlohmann::ordered_json;

namespace {

// all report floats carry 15 significant digits
double round15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ordered_json interval_json(const IntervalQ& iv) {
    return ordered_json::array({iv.lo.str(), iv.hi.str()});
}

ordered_json matrix_json(const AdjMatrix& M) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < M.n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < M.n; ++j) {
            const mpz_class& v = M.at(i, j);
            if (v.fits_slong_p())
                row.push_back(v.get_si());
            else
                row.push_back(v.get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

ordered_json verdict_json(const EvidenceVerdict& v) {
    ordered_json j;
    j["kind"] = evidence_kind_name(v.kind);
    j["positive"] = v.positive;
    j["scale"] = v.scale.str();
    j["horizon"] = v.horizon;
    j["evidence_only"] = true;
    j["certificate"] = v.certificate;
    if (v.witness_interval) j["witness_interval"] = interval_json(*v.witness_interval);
    if (v.witness_iterate) j["witness_iterate"] = *v.witness_iterate;
    if (v.witness_pair)
        j["witness_pair"] = ordered_json::array({v.witness_pair->first.str(), v.witness_pair->second.str()});
    return j;
}

} // namespace

PwlMap read_map_spec(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad map spec JSON: ") + e.what());
    }
    if (!j.contains("domain") || !j.contains("nodes"))
        fail(Err::ParseError, "map spec needs 'domain' and 'nodes'");
    auto dom = j["domain"];
    if (!dom.is_array() || dom.size() != 2) fail(Err::ParseError, "domain must be [lo, hi]");
    IntervalQ domain(Rat::parse(dom[0].get<std::string>()), Rat::parse(dom[1].get<std::string>()));
    std::vector<Node> nodes;
    for (const auto& nd : j["nodes"]) {
        if (!nd.is_array() || nd.size() != 2) fail(Err::ParseError, "node must be [x, y]");
        nodes.push_back({Rat::parse(nd[0].get<std::string>()), Rat::parse(nd[1].get<std::string>())});
    }
    return make_pwl(domain, std::move(nodes));
}

std::string write_map_spec(const PwlMap& f) {
    ordered_json j;
    j["domain"] = interval_json(f.domain());
    ordered_json nodes = ordered_json::array();
    for (const Node& nd : f.nodes()) nodes.push_back(ordered_json::array({nd.x.str(), nd.y.str()}));
    j["nodes"] = nodes;
    return j.dump();
}

PwlMap resolve_map(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return read_map_spec(spec);
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::ifstream in(spec);
        if (!in) fail(Err::ParseError, "cannot open map spec file " + spec);
        std::stringstream ss;
        ss << in.rdbuf();
        return read_map_spec(ss.str());
    }
    return catalog(spec);
}

namespace {

// Exact entropy route: close the breakpoint set under f; when the closure
// is finite and f is monotone between consecutive closure points, the
// Markov formula gives h_top exactly.
std::optional<std::vector<Rat>> breakpoint_closure(const PwlMap& f, std::size_t cap = 512) {
    std::set<Rat> P;
    for (const Node& nd : f.nodes()) P.insert(nd.x);
    P.insert(f.domain().lo);
    P.insert(f.domain().hi);
    std::vector<Rat> queue(P.begin(), P.end());
    while (!queue.empty()) {
        Rat x = queue.back();
        queue.pop_back();
        Rat y = f.eval(x);
        if (P.insert(y).second) {
            if (P.size() > cap) return std::nullopt;
            queue.push_back(y);
        }
    }
    return std::vector<Rat>(P.begin(), P.end());
}

std::vector<std::pair<Rat, Rat>> sample_ly_pairs(const PwlMap& f, unsigned count,
                                                 std::mt19937_64& rng) {
    // primes near 2^31 at which 2 has huge multiplicative order
    constexpr long primes[] = {2147483659, 2147483693, 2147483713, 2147483743, 2147483813};
    IntervalQ dom = f.domain();
    Rat len = dom.length();
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
        long q1 = primes[rng() % 5], q2 = primes[rng() % 5];
        std::uniform_int_distribution<long> n1(1, q1 - 2), n2(1, q2 - 2);
        out.emplace_back(dom.lo + Rat(n1(rng), q1) * len, dom.lo + Rat(n2(rng), q2) * len);
    }
    return out;
}

} // namespace

namespace {

void validate(const AnalysisConfig& c) {
    if (c.period_bound == 0 || c.entropy_lap_n == 0 || c.evidence_horizon == 0 ||
        c.horseshoe_depth == 0)
        fail(Err::IllFormed, "analysis bounds must be positive");
    if (c.precision_bits < 64) fail(Err::IllFormed, "precision must be at least 64 bits");
    if (c.mixing_eps <= Rat(0)) fail(Err::IllFormed, "mixing eps must be positive");
    if (c.budgets.max_pieces < 4 || c.budgets.max_den_bits < 64)
        fail(Err::IllFormed, "budgets below the minimal defaults");
}

} // namespace

ChaosReport analyze(const std::string& spec_or_catalog, const AnalysisConfig& cfg) {
    validate(cfg);
    auto t0 = std::chrono::steady_clock::now();
    PwlMap f = resolve_map(spec_or_catalog);
    std::string canonical = write_map_spec(f);

    ordered_json rep;
    rep["schema"] = "chaoskit-report/1";
    rep["map"] = ordered_json{{"name", spec_or_catalog},
                              {"spec", ordered_json::parse(canonical)},
                              {"pieces", f.piece_count()},
                              {"hash", fnv1a(canonical)}};
    bool partial = false;
    ordered_json sections = ordered_json::object();
    auto section = [&](const char* name, auto&& body) {
        try {
            body();
            sections[name] = "ok";
        } catch (const Error& e) {
            rep[name] = ordered_json{{"status", "error"}, {"error", e.what()}};
            sections[name] = std::string("error: ") + err_name(e.code());
            partial = true;
        }
    };

    // periods and type
    std::set<unsigned> periods;
    section("periods", [&] {
        periods = periods_up_to(f, cfg.period_bound, cfg.budgets);
        SharkovskyType ty = infer_type(f, cfg.period_bound, cfg.budgets);
        ordered_json j;
        j["bound"] = cfg.period_bound;
        j["realized"] = std::vector<unsigned>(periods.begin(), periods.end());
        if (ty.finite) {
            j["type"] = ordered_json{{"kind", "finite"}, {"period", ty.value}};
        } else {
            j["type"] = ordered_json{{"kind", "two-infinity-candidate"}, {"bound", ty.value}};
        }
        // forced-tail consistency of the verdict
        if (ty.finite) {
            bool consistent = true;
            for (unsigned m : sharkovsky_forced(ty.value, cfg.period_bound))
                if (!periods.count(m)) consistent = false;
            j["forced_tail_consistent"] = consistent;
        }
        rep["periods"] = j;
    });

    // horseshoes (also feed the entropy lower bound)
    double horseshoe_lower = 0.0;
    std::string horseshoe_witness;
    section("horseshoes", [&] {
        ordered_json arr = ordered_json::array();
        for (unsigned power : cfg.horseshoe_powers) {
            ordered_json j;
            j["power"] = power;
            auto h = horseshoe_search(f, power, cfg.horseshoe_depth, cfg.budgets);
            j["found"] = h.has_value();
            if (h) {
                j["J"] = interval_json(h->J);
                j["K"] = interval_json(h->K);
                j["strict"] = h->strict;
                double bound = std::log(2.0) / power;
                if (bound > horseshoe_lower) {
                    horseshoe_lower = bound;
                    horseshoe_witness = "horseshoe for f^" + std::to_string(power);
                }
            } else {
                j["note"] = "not found at depth " + std::to_string(cfg.horseshoe_depth);
            }
            arr.push_back(j);
        }
        rep["horseshoes"] = arr;
    });

    // entropy bounds
    section("entropy", [&] {
        ordered_json j;
        EntropyBounds b;
        auto closure = breakpoint_closure(f);
        bool exact_done = false;
        if (closure) {
            try {
                double h = entropy_markov(f, *closure);
                b.lower = b.upper = h;
                b.exact = true;
                b.lower_witness = b.upper_witness =
                    "markov: P-monotone breakpoint closure, |P| = " + std::to_string(closure->size());
                exact_done = true;
            } catch (const Error&) {
                // not P-monotone; fall through to two-sided bounds
            }
        }
        if (!exact_done) {
            EntropyLower sup = entropy_lower_sup(f, cfg.orbit_sup_bound, cfg.budgets);
            b.lower = sup.value;
            b.lower_witness = sup.witness;
            if (horseshoe_lower > b.lower) {
                b.lower = horseshoe_lower;
                b.lower_witness = horseshoe_witness;
            }
            if (!periods.empty()) {
                unsigned m = *periods.begin();
                for (unsigned p : periods)
                    if (sharkovsky_leq(p, m)) m = p;
                double tb = type_entropy_bound(m);
                if (tb > b.lower) {
                    b.lower = tb;
                    b.lower_witness = "type bound from period " + std::to_string(m);
                }
            }
            // every (1/n) log c_n is a valid upper bound; take the tightest
            // level the piece budget allows
            b.upper = entropy_upper_lipschitz(f);
            b.upper_witness = "Lipschitz constant";
            PwlMap g = f;
            for (unsigned n = 1; n <= cfg.entropy_lap_n; ++n) {
                if (n > 1) {
                    try {
                        g = compose(f, g, cfg.budgets);
                    } catch (const Error&) {
                        break;
                    }
                }
                double lap = std::log(static_cast<double>(lap_count_fn(g.fn()))) / n;
                if (lap < b.upper) {
                    b.upper = lap;
                    b.upper_witness = "lap count at n = " + std::to_string(n);
                }
            }
        }
        j["lower"] = round15(b.lower);
        j["upper"] = round15(b.upper);
        j["lower_witness"] = b.lower_witness;
        j["upper_witness"] = b.upper_witness;
        j["exact"] = b.exact;
        j["unit"] = "nats";
        rep["entropy"] = j;
    });

    // covering graph of the breakpoint closure (when small enough to embed)
    section("markov_graph", [&] {
        auto closure = breakpoint_closure(f, 64);
        if (!closure) {
            rep["markov_graph"] = ordered_json{{"status", "breakpoint closure exceeds 64 points"}};
            return;
        }
        OrbitGraph og = build_orbit_graph(f, *closure);
        ordered_json j;
        ordered_json pts = ordered_json::array();
        for (const Rat& p : og.p_points) pts.push_back(p.str());
        j["p_points"] = pts;
        j["p_monotone"] = og.p_monotone;
        j["full_matrix"] = matrix_json(og.full_matrix);
        j["ctd_matrix"] = matrix_json(og.ctd_matrix);
        j["dot"] = to_dot(og.ctd_matrix);
        rep["markov_graph"] = j;
    });

    // evidence verdicts
    section("evidence", [&] {
        ordered_json j;
        j["mixing"] = verdict_json(mixing_evidence(f, cfg.mixing_eps, cfg.evidence_scale,
                                                   cfg.evidence_horizon));
        Rat delta = f.domain().length() / Rat(4);
        j["sensitivity"] =
            verdict_json(sensitivity_evidence(f, delta, cfg.evidence_scale, cfg.evidence_horizon));
        j["devaney"] = verdict_json(devaney_verdict(f, cfg.evidence_scale, cfg.evidence_horizon));
        rep["evidence"] = j;
    });

    // Li-Yorke candidate fraction
    section("li_yorke", [&] {
        std::mt19937_64 rng(cfg.rng_seed);
        auto seeds = sample_ly_pairs(f, cfg.ly_pairs, rng);
        double delta = cfg.ly_delta * f.domain().length().to_double();
        double delta_low = f.domain().length().to_double() * 0.0009765625;
        LyScanResult r = ly_pair_scan(f, seeds, cfg.ly_horizon, delta, delta_low,
                                      cfg.precision_bits);
        ordered_json j;
        j["pairs"] = seeds.size();
        j["horizon"] = cfg.ly_horizon;
        j["delta"] = round15(delta);
        j["delta_low"] = round15(delta_low);
        j["candidate_fraction"] = round15(r.fraction);
        j["evidence_only"] = true;
        rep["li_yorke"] = j;
    });

    // distributional chaos class
    section("distributional", [&] {
        EvidenceVerdict v =
            dc_classify(f, cfg.dc_samples, cfg.dc_horizon, cfg.rng_seed, cfg.precision_bits);
        ordered_json j = verdict_json(v);
        double lower = 0.0;
        if (rep.contains("entropy") && rep["entropy"].contains("lower"))
            lower = rep["entropy"]["lower"].get<double>();
        if ((v.kind == EvidenceKind::DC1 || v.kind == EvidenceKind::DC2) && lower <= 1e-12)
            j["zero_entropy_consistent_flag"] = "evidence-only, zero-entropy-consistent";
        rep["distributional"] = j;
    });

    // solenoidal structure
    section("solenoid", [&] {
        auto cycles = solenoid_scan(f, f.domain().lo, cfg.solenoid_kmax, cfg.solenoid_horizon,
                                    std::max(cfg.precision_bits, 192u));
        ordered_json arr = ordered_json::array();
        for (const auto& c : cycles) {
            ordered_json j;
            j["period"] = c.period;
            j["degenerate"] = c.degenerate;
            ordered_json hs = ordered_json::array();
            for (const auto& h : c.hulls) hs.push_back(interval_json(h));
            j["hulls"] = hs;
            arr.push_back(j);
        }
        rep["solenoid"] = ordered_json{{"seed", f.domain().lo.str()},
                                       {"horizon", cfg.solenoid_horizon},
                                       {"verified_cycles", arr}};
    });

    rep["sections"] = sections;
    rep["partial"] = partial;
    if (cfg.with_timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        rep["timing_ms"] = ms;
    }

    ChaosReport out;
    out.json_text = rep.dump(2) + "\n";
    out.partial = partial;
    return out;
}

std::string plotdata(const std::string& spec_or_catalog, const std::string& kind,
                     const PlotParams& params) {
    PwlMap f = resolve_map(spec_or_catalog);
    std::ostringstream os;
    char buf[96];
    auto put2 = [&](double a, double b) {
        std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", a, b);
        os << buf;
    };

    if (kind == "graph") {
        os << "x,y\n";
        for (const Node& nd : f.nodes()) put2(nd.x.to_double(), nd.y.to_double());
        return os.str();
    }
    if (kind == "cobweb") {
        if (!f.domain().contains(params.x0)) fail(Err::OutOfDomain, "x0 outside domain");
        os << "x,y\n";
        Rat x = params.x0;
        put2(x.to_double(), x.to_double());
        for (unsigned k = 0; k < params.n; ++k) {
            Rat y = f.eval(x);
            put2(x.to_double(), y.to_double());
            put2(y.to_double(), y.to_double());
            x = y;
        }
        return os.str();
    }
    if (kind == "orbit") {
        Trajectory t = trajectory(f, params.x0, params.n, params.precision_bits);
        os << "n,x\n";
        for (std::size_t k = 0; k < t.values.size(); ++k)
            put2(static_cast<double>(k), t.values[k].to_double());
        return os.str();
    }
    if (kind == "distfn") {
        DistFns d = dist_fns(f, params.x0, params.y0, params.horizon, {}, 0, params.precision_bits);
        return dist_fns_csv(d);
    }
    fail(Err::ParseError, "unknown plot kind '" + kind + "'");
}

} // namespace chaoskit
