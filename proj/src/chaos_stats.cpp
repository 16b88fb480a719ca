#include "chaoskit/chaos_stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chaoskit/par.hpp"

namespace chaoskit {

bool integer_slope_lattice(const PwlMap& f) {
    const auto& n = f.nodes();
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        Rat s = (n[i + 1].y - n[i].y) / (n[i + 1].x - n[i].x);
        if (!s.is_integer()) return false;
    }
    return true;
}

namespace {

// Rounds a rational interval outward onto the 2^-bits dyadic grid, clipped
// to the domain.
IntervalQ round_out(const IntervalQ& J, unsigned bits, const IntervalQ& dom) {
    mpz_class scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    mpz_class lo_n, hi_n;
    mpz_fdiv_q(lo_n.get_mpz_t(), mpz_class(J.lo.num() * scale).get_mpz_t(), J.lo.den().get_mpz_t());
    mpz_cdiv_q(hi_n.get_mpz_t(), mpz_class(J.hi.num() * scale).get_mpz_t(), J.hi.den().get_mpz_t());
    Rat lo(lo_n, scale), hi(hi_n, scale);
    if (lo < dom.lo) lo = dom.lo;
    if (hi > dom.hi) hi = dom.hi;
    return IntervalQ(lo, hi);
}

constexpr std::size_t kExactDenBitsCap = 1 << 15;

} // namespace

Trajectory trajectory(const PwlMap& f, const Rat& x, unsigned n, unsigned precision_bits) {
    if (!f.domain().contains(x)) fail(Err::OutOfDomain, "seed outside domain");
    if (precision_bits < 64) fail(Err::IllFormed, "precision_bits must be >= 64");

    Trajectory t;
    t.seed = x;
    t.precision_bits = precision_bits;
    t.values.reserve(n + 1);

    bool lattice = integer_slope_lattice(f);
    Rat max_width = f.domain().length() / Rat(1 << 16);

    Rat cur = x;
    bool exact_phase = true;
    IntervalQ enc(x, x);
    for (unsigned k = 0; k <= n; ++k) {
        if (exact_phase) {
            t.values.push_back(cur);
            if (k == n) break;
            cur = f.eval(cur);
            if (!lattice && cur.den_bits() > kExactDenBitsCap) {
                // switch to certified dyadic enclosures from here on
                exact_phase = false;
                t.exact = false;
                enc = round_out(IntervalQ(cur, cur), precision_bits, f.domain());
            }
        } else {
            Rat mid = enc.midpoint();
            t.values.push_back(mid);
            Rat half = enc.length() / Rat(2);
            if (half > Rat(0)) {
                double e = std::log2(half.to_double()) + precision_bits;
                t.error_bound_log2 = std::max(t.error_bound_log2, e);
            }
            if (half > max_width)
                fail(Err::PrecisionExhausted, "enclosure width exceeds 2^-16 of domain");
            if (k == n) break;
            enc = round_out(f.fn().image(enc), precision_bits, f.domain());
        }
    }
    return t;
}

const char* evidence_kind_name(EvidenceKind k) {
    switch (k) {
        case EvidenceKind::MixingEvidence: return "mixing";
        case EvidenceKind::SensitivityEvidence: return "sensitivity";
        case EvidenceKind::TransitivityEvidence: return "transitivity";
        case EvidenceKind::DevaneyEvidence: return "devaney";
        case EvidenceKind::DC1: return "DC1";
        case EvidenceKind::DC2: return "DC2";
        case EvidenceKind::DC3: return "DC3";
        case EvidenceKind::None: return "none";
    }
    return "unknown";
}

namespace {

std::vector<IntervalQ> dyadic_grid(const IntervalQ& dom, unsigned scale_k) {
    std::size_t cells = std::size_t(1) << scale_k;
    Rat len = dom.length();
    std::vector<IntervalQ> out;
    out.reserve(cells);
    Rat prev = dom.lo;
    for (std::size_t i = 1; i <= cells; ++i) {
        Rat next = i == cells ? dom.hi : dom.lo + Rat(static_cast<long>(i), static_cast<long>(cells)) * len;
        out.emplace_back(prev, next);
        prev = next;
    }
    return out;
}

} // namespace

EvidenceVerdict mixing_evidence(const PwlMap& f, const Rat& eps, unsigned scale_k, unsigned N) {
    IntervalQ dom = f.domain();
    if (eps <= Rat(0) || Rat(2) * eps >= dom.length())
        fail(Err::IllFormed, "eps must satisfy 0 < 2*eps < |I|");
    IntervalQ target(dom.lo + eps, dom.hi - eps);
    std::vector<IntervalQ> grid = dyadic_grid(dom, scale_k);

    struct Cell {
        bool ok;
        unsigned onset; // smallest n with coverage persisting through N
    };
    std::vector<Cell> cells(grid.size());
    par::for_each_index(grid.size(), [&](std::size_t i) {
        IntervalQ cur = grid[i];
        unsigned last_uncovered = 0;
        bool covered_any = false;
        for (unsigned m = 1; m <= N; ++m) {
            cur = f.fn().image(cur);
            if (cur.contains(target))
                covered_any = true;
            else
                last_uncovered = m;
        }
        cells[i].ok = covered_any && last_uncovered < N;
        cells[i].onset = last_uncovered + 1;
    });

    EvidenceVerdict v;
    v.kind = EvidenceKind::MixingEvidence;
    v.scale = eps;
    v.horizon = N;
    unsigned worst = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i].ok) {
            v.positive = false;
            v.witness_interval = grid[i];
            std::ostringstream os;
            os << "cell " << grid[i].str() << " does not cover " << target.str()
               << " persistently within " << N << " iterates";
            v.certificate = os.str();
            return v;
        }
        worst = std::max(worst, cells[i].onset);
    }
    v.positive = true;
    v.witness_iterate = worst;
    std::ostringstream os;
    os << "all " << grid.size() << " cells at scale 2^-" << scale_k << " cover " << target.str()
       << " from iterate " << worst << " through " << N;
    v.certificate = os.str();
    return v;
}

EvidenceVerdict sensitivity_evidence(const PwlMap& f, const Rat& delta, unsigned scale_k,
                                     unsigned N) {
    std::vector<IntervalQ> grid = dyadic_grid(f.domain(), scale_k);
    std::vector<std::optional<unsigned>> hit(grid.size());
    par::for_each_index(grid.size(), [&](std::size_t i) {
        IntervalQ cur = grid[i];
        for (unsigned m = 0; m <= N; ++m) {
            if (cur.length() >= delta) {
                hit[i] = m;
                return;
            }
            cur = f.fn().image(cur);
        }
    });

    EvidenceVerdict v;
    v.kind = EvidenceKind::SensitivityEvidence;
    v.scale = delta;
    v.horizon = N;
    unsigned worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!hit[i]) {
            v.positive = false;
            v.witness_interval = grid[i];
            v.certificate = "cell " + grid[i].str() + " never reaches diameter " + delta.str();
            return v;
        }
        worst = std::max(worst, *hit[i]);
    }
    v.positive = true;
    v.witness_iterate = worst;
    v.certificate = "every cell at scale 2^-" + std::to_string(scale_k) +
                    " reaches diameter " + delta.str() + " by iterate " + std::to_string(worst);
    return v;
}

EvidenceVerdict devaney_verdict(const PwlMap& f, unsigned scale_k, unsigned N) {
    std::vector<IntervalQ> grid = dyadic_grid(f.domain(), scale_k);
    std::size_t g = grid.size();
    // forward image sequences, then pairwise meeting times
    std::vector<std::vector<IntervalQ>> seq(g);
    par::for_each_index(g, [&](std::size_t i) {
        seq[i].reserve(N + 1);
        seq[i].push_back(grid[i]);
        for (unsigned m = 1; m <= N; ++m) seq[i].push_back(f.fn().image(seq[i].back()));
    });

    EvidenceVerdict v;
    v.kind = EvidenceKind::DevaneyEvidence;
    v.scale = Rat(1, 1 << scale_k);
    v.horizon = N;
    unsigned worst = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            std::optional<unsigned> meet;
            for (unsigned m = 0; m <= N && !meet; ++m)
                if (seq[i][m].intersects(grid[j])) meet = m;
            if (!meet) {
                v.positive = false;
                v.certificate = "images of " + grid[i].str() + " never meet " + grid[j].str() +
                                " within " + std::to_string(N) + " iterates";
                v.witness_interval = grid[i];
                return v;
            }
            worst = std::max(worst, *meet);
        }
    v.positive = true;
    v.witness_iterate = worst;
    v.certificate = "every pair of scale-2^-" + std::to_string(scale_k) + " cells meets within " +
                    std::to_string(worst) +
                    " iterates (Devaney chaos = transitivity for interval maps)";
    return v;
}

LyScanResult ly_pair_scan(const PwlMap& f, const std::vector<std::pair<Rat, Rat>>& seeds,
                          unsigned horizon, double delta, double delta_low,
                          unsigned precision_bits) {
    LyScanResult res;
    res.delta = delta;
    res.delta_low = delta_low;
    res.horizon = horizon;
    res.pairs.resize(seeds.size());
    unsigned tail_start = horizon - horizon / 5; // last 20%

    par::for_each_index(seeds.size(), [&](std::size_t i) {
        Trajectory tx = trajectory(f, seeds[i].first, horizon, precision_bits);
        Trajectory ty = trajectory(f, seeds[i].second, horizon, precision_bits);
        double dmax = 0, dmin = 1e300;
        for (unsigned k = tail_start; k <= horizon; ++k) {
            double d = std::abs((tx.values[k] - ty.values[k]).to_double());
            dmax = std::max(dmax, d);
            dmin = std::min(dmin, d);
        }
        LyPairStat& s = res.pairs[i];
        s.x = seeds[i].first;
        s.y = seeds[i].second;
        s.limsup_hat = dmax;
        s.liminf_hat = dmin;
        s.candidate = dmax >= delta && dmin <= delta_low;
    });

    std::size_t c = 0;
    for (const auto& s : res.pairs) c += s.candidate;
    res.fraction = seeds.empty() ? 0.0 : static_cast<double>(c) / seeds.size();
    return res;
}

namespace {

std::vector<double> default_t_grid(double diam) {
    std::vector<double> g;
    for (int k = 16; k >= 1; --k) g.push_back(diam * std::ldexp(1.0, -k));
    g.push_back(diam * 0.75);
    g.push_back(diam * 0.9);
    g.push_back(diam * 1.001);
    return g;
}

} // namespace

DistFns dist_fns(const PwlMap& f, const Rat& x, const Rat& y, unsigned horizon,
                 std::vector<double> t_grid, unsigned window, unsigned precision_bits) {
    if (horizon < 100) fail(Err::IllFormed, "horizon must be >= 100");
    double diam = f.domain().length().to_double();
    if (t_grid.empty()) t_grid = default_t_grid(diam);
    std::sort(t_grid.begin(), t_grid.end());
    if (window == 0) window = 16;
    if (window > horizon / 5) window = std::max(1u, horizon / 5);

    Trajectory tx = trajectory(f, x, horizon, precision_bits);
    Trajectory ty = trajectory(f, y, horizon, precision_bits);
    std::vector<double> d(horizon);
    for (unsigned k = 0; k < horizon; ++k)
        d[k] = std::abs((tx.values[k] - ty.values[k]).to_double());
    unsigned tail_start = horizon - horizon / 5; // last 20%

    DistFns out;
    out.t_grid = t_grid;
    out.horizon = horizon;
    out.window = window;
    out.F_lower.resize(t_grid.size());
    out.F_upper.resize(t_grid.size());
    out.F_lower_all.resize(t_grid.size());
    out.F_upper_all.resize(t_grid.size());
    out.tail_min = 1e300;
    out.tail_max = 0;
    for (unsigned k = tail_start; k < horizon; ++k) {
        out.tail_min = std::min(out.tail_min, d[k]);
        out.tail_max = std::max(out.tail_max, d[k]);
    }

    std::vector<unsigned> prefix(horizon + 1);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        double t = t_grid[ti];
        prefix[0] = 0;
        for (unsigned k = 0; k < horizon; ++k) prefix[k + 1] = prefix[k] + (d[k] < t ? 1 : 0);
        unsigned all_max = 0, all_min = window, tail_max = 0, tail_min = window;
        for (unsigned s = 0; s + window <= horizon; ++s) {
            unsigned c = prefix[s + window] - prefix[s];
            all_max = std::max(all_max, c);
            all_min = std::min(all_min, c);
            if (s >= tail_start) {
                tail_max = std::max(tail_max, c);
                tail_min = std::min(tail_min, c);
            }
        }
        out.F_lower_all[ti] = static_cast<double>(all_min) / window;
        out.F_upper_all[ti] = static_cast<double>(all_max) / window;
        out.F_lower[ti] = static_cast<double>(tail_min) / window;
        out.F_upper[ti] = static_cast<double>(tail_max) / window;
    }
    return out;
}

std::string dist_fns_csv(const DistFns& d) {
    std::ostringstream os;
    os << "t,F_lower,F_upper\n";
    char buf[96];
    for (std::size_t i = 0; i < d.t_grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g\n", d.t_grid[i], d.F_lower[i],
                      d.F_upper[i]);
        os << buf;
    }
    return os.str();
}

namespace {

// odd primes near 2^31 at which 2 has huge multiplicative order, so
// slope-2 orbit differences wander over ~2^31 lattice values (2^31 - 1
// itself is useless here: ord_2 = 31)
constexpr long kOddPrimes[] = {2147483659, 2147483693, 2147483713, 2147483743, 2147483813};

std::pair<Rat, Rat> sample_pair(std::mt19937_64& rng, const IntervalQ& dom, bool nearby) {
    long q = kOddPrimes[rng() % (sizeof kOddPrimes / sizeof *kOddPrimes)];
    std::uniform_int_distribution<long> num(1, q - 2);
    Rat len = dom.length();
    long p = num(rng);
    Rat x = dom.lo + Rat(p, q) * len;
    Rat y;
    if (nearby) {
        y = dom.lo + Rat(p + 1, q) * len;
    } else {
        long q2 = kOddPrimes[rng() % (sizeof kOddPrimes / sizeof *kOddPrimes)];
        std::uniform_int_distribution<long> num2(1, q2 - 2);
        y = dom.lo + Rat(num2(rng), q2) * len;
    }
    return {x, y};
}

enum class DcClass { None = 0, Dc3 = 1, Dc2 = 2, Dc1 = 3 };

// DC1/DC2 refine Li-Yorke pairs, so both require recurrent proximity and
// separation in the tail; the full-horizon burst statistic supplies the
// "F = 0 while F* = 1" signature of DC1. DC3 is a bare distribution gap.
DcClass classify_fns(const DistFns& d, double diam) {
    bool gap3 = false, dc2 = false, burst1 = false;
    for (std::size_t i = 0; i < d.t_grid.size(); ++i) {
        if (d.F_lower[i] < d.F_upper[i] - 0.1) {
            gap3 = true;
            if (d.F_upper[i] > 0.95) dc2 = true;
        }
        if (d.F_upper_all[i] > 0.95 && d.F_lower_all[i] < 0.05) burst1 = true;
    }
    bool ly_gate = d.tail_max >= diam * 0.25 && d.tail_min <= diam * 0.0009765625;
    if (dc2 && ly_gate && burst1) return DcClass::Dc1;
    if (dc2 && ly_gate) return DcClass::Dc2;
    if (gap3) return DcClass::Dc3;
    return DcClass::None;
}

} // namespace

EvidenceVerdict dc_classify(const PwlMap& f, unsigned samples, unsigned horizon,
                            unsigned long long rng_seed, unsigned precision_bits) {
    if (horizon < 100) fail(Err::IllFormed, "horizon must be >= 100");
    std::mt19937_64 rng(rng_seed);
    std::vector<std::pair<Rat, Rat>> pairs;
    pairs.reserve(samples);
    for (unsigned i = 0; i < samples; ++i)
        pairs.push_back(sample_pair(rng, f.domain(), i % 2 == 0));

    double diam = f.domain().length().to_double();
    std::vector<DcClass> cls(pairs.size(), DcClass::None);
    par::for_each_index(pairs.size(), [&](std::size_t i) {
        DistFns d = dist_fns(f, pairs[i].first, pairs[i].second, horizon, {}, 0, precision_bits);
        cls[i] = classify_fns(d, diam);
    });

    EvidenceVerdict v;
    v.horizon = horizon;
    v.scale = f.domain().length() / Rat(4); // Li-Yorke gate separation scale
    DcClass best = DcClass::None;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (static_cast<int>(cls[i]) > static_cast<int>(best)) {
            best = cls[i];
            best_i = i;
        }
    switch (best) {
        case DcClass::Dc1: v.kind = EvidenceKind::DC1; break;
        case DcClass::Dc2: v.kind = EvidenceKind::DC2; break;
        case DcClass::Dc3: v.kind = EvidenceKind::DC3; break;
        case DcClass::None: v.kind = EvidenceKind::None; break;
    }
    v.positive = best != DcClass::None;
    if (v.positive) {
        v.witness_pair = pairs[best_i];
        v.certificate = std::string(evidence_kind_name(v.kind)) + " signature on pair (" +
                        pairs[best_i].first.str() + ", " + pairs[best_i].second.str() +
                        ") at horizon " + std::to_string(horizon);
    } else {
        v.certificate = "no distributional gap on " + std::to_string(samples) +
                        " sampled pairs at horizon " + std::to_string(horizon);
    }
    return v;
}

double seq_entropy_estimate(const PwlMap& f, const std::vector<unsigned>& A, unsigned n,
                            const Rat& eps, unsigned grid) {
    if (n == 0 || grid == 0) fail(Err::IllFormed, "n and grid must be >= 1");
    if (A.size() < n) fail(Err::IllFormed, "sequence shorter than n");
    for (std::size_t i = 1; i < n; ++i)
        if (A[i] <= A[i - 1]) fail(Err::IllFormed, "sequence must be strictly increasing");

    IntervalQ dom = f.domain();
    Rat len = dom.length();
    unsigned top = A[n - 1];
    std::vector<std::vector<double>> traj(grid);
    par::for_each_index(grid, [&](std::size_t i) {
        Rat x = dom.lo + Rat(2 * static_cast<long>(i) + 1, 2 * static_cast<long>(grid)) * len;
        std::vector<double> full;
        full.reserve(top + 1);
        for (unsigned k = 0; k <= top; ++k) {
            full.push_back(x.to_double());
            if (k < top) x = f.eval(x);
        }
        traj[i].reserve(n);
        for (unsigned k = 0; k < n; ++k) traj[i].push_back(full[A[k]]);
    });

    double e = eps.to_double();
    std::vector<std::size_t> accepted;
    for (std::size_t i = 0; i < grid; ++i) {
        bool ok = true;
        for (std::size_t j : accepted) {
            bool separated = false;
            for (std::size_t k = n; k-- > 0;)
                if (std::abs(traj[i][k] - traj[j][k]) > e) {
                    separated = true;
                    break;
                }
            if (!separated) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(i);
    }
    return std::log(static_cast<double>(accepted.size())) / n;
}

std::vector<SolenoidCycle> solenoid_scan(const PwlMap& f, const Rat& x, unsigned K_max,
                                         unsigned horizon, unsigned precision_bits) {
    Trajectory t = trajectory(f, x, horizon, precision_bits);
    if (!t.exact) fail(Err::PrecisionExhausted, "solenoid scan needs an exact trajectory");

    std::vector<SolenoidCycle> out;
    for (unsigned k = 0; k <= K_max; ++k) {
        unsigned period = 1u << k;
        if (period * 4 > horizon) break;

        // hull of tail values in one residue class mod 2^k
        IntervalQ H(t.values[horizon], t.values[horizon]);
        for (unsigned i = horizon; i >= horizon / 2 + period; i -= period) {
            const Rat& v = t.values[i - period];
            H = H.hull(IntervalQ(v, v));
        }

        auto image_p = [&](IntervalQ J) {
            for (unsigned s = 0; s < period; ++s) J = f.fn().image(J);
            return J;
        };

        bool stable = false;
        for (unsigned pull = 0; pull < 512; ++pull) {
            if (H.degenerate()) {
                Rat img = H.lo;
                for (unsigned s = 0; s < period; ++s) img = f.eval(img);
                stable = img == H.lo;
                break;
            }
            IntervalQ H2 = H.hull(image_p(H));
            if (H2 == H) {
                stable = image_p(H) == H;
                break;
            }
            H = H2;
        }
        if (!stable) break;

        SolenoidCycle cyc;
        cyc.level = k;
        cyc.period = period;
        cyc.degenerate = H.degenerate();
        cyc.hulls.push_back(H);
        for (unsigned s = 1; s < period; ++s) {
            const IntervalQ& prev = cyc.hulls.back();
            if (prev.degenerate()) {
                Rat v = f.eval(prev.lo);
                cyc.hulls.emplace_back(v, v);
            } else {
                cyc.hulls.push_back(f.fn().image(prev));
            }
        }
        bool disjoint = true;
        for (std::size_t i = 0; i < cyc.hulls.size() && disjoint; ++i)
            for (std::size_t j = i + 1; j < cyc.hulls.size() && disjoint; ++j)
                if (!cyc.hulls[i].disjoint(cyc.hulls[j])) disjoint = false;
        if (!disjoint) break;
        out.push_back(std::move(cyc));
    }
    return out;
}

} // namespace chaoskit
