#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/pwl.hpp"

namespace chaoskit {

/// Orbit segment with a forward-error certificate. In exact mode every
/// value is the true rational orbit point. Otherwise values are dyadic
/// midpoints of rigorously propagated enclosures at scale 2^-precision_bits,
/// and the true point lies within 2^(error_bound_log2 - precision_bits) of
/// the stored value.
struct Trajectory {
    Rat seed;
    std::vector<Rat> values;
    unsigned precision_bits = 0;
    double error_bound_log2 = -1e300; // -inf when exact
    bool exact = true;
};

/// Computes n+1 certified orbit values. The exact-rational path is taken
/// while denominators stay within the lattice cap (guaranteed forever when
/// all slopes are integers); afterwards the orbit continues as a dyadic
/// interval enclosure. Throws PrecisionExhausted when the enclosure width
/// exceeds 2^-16 of the domain length.
Trajectory trajectory(const PwlMap& f, const Rat& x, unsigned n, unsigned precision_bits);

/// True when every piece slope is an integer, which keeps orbit
/// denominators bounded for any rational seed.
bool integer_slope_lattice(const PwlMap& f);

enum class EvidenceKind {
    MixingEvidence,
    SensitivityEvidence,
    TransitivityEvidence,
    DevaneyEvidence,
    DC1,
    DC2,
    DC3,
    None,
};

const char* evidence_kind_name(EvidenceKind k);

/// Finite-horizon verdict with a re-checkable witness. Positive verdicts
/// are evidence, never proofs; the quantifiers of the underlying
/// definitions range over infinite time.
struct EvidenceVerdict {
    EvidenceKind kind = EvidenceKind::None;
    bool positive = false;
    Rat scale;
    unsigned horizon = 0;
    std::string certificate;
    std::optional<IntervalQ> witness_interval;
    std::optional<unsigned> witness_iterate;
    std::optional<std::pair<Rat, Rat>> witness_pair;
};

/// Positive iff every dyadic subinterval at scale 2^-scale_k has exact
/// forward images covering [lo+eps, hi-eps] from some n <= N onwards.
EvidenceVerdict mixing_evidence(const PwlMap& f, const Rat& eps, unsigned scale_k, unsigned N);

/// Positive iff every dyadic subinterval at scale 2^-scale_k attains exact
/// image diameter >= delta within N iterates.
EvidenceVerdict sensitivity_evidence(const PwlMap& f, const Rat& delta, unsigned scale_k,
                                     unsigned N);

/// Transitivity evidence: every dyadic J meets every dyadic K under some
/// f^n, n <= N (exact interval images). Devaney chaos for interval maps is
/// equivalent to transitivity, so the verdict carries that label.
EvidenceVerdict devaney_verdict(const PwlMap& f, unsigned scale_k, unsigned N);

struct LyPairStat {
    Rat x;
    Rat y;
    double limsup_hat = 0;  // max distance over the tail window
    double liminf_hat = 0;  // min distance over the tail window
    bool candidate = false;
};

struct LyScanResult {
    std::vector<LyPairStat> pairs;
    double fraction = 0; // candidates / pairs
    double delta;
    double delta_low;
    unsigned horizon;
};

/// Li-Yorke candidate scan: a pair is flagged when the tail-window maximum
/// distance reaches delta and the tail-window minimum drops to delta_low.
LyScanResult ly_pair_scan(const PwlMap& f, const std::vector<std::pair<Rat, Rat>>& seeds,
                          unsigned horizon, double delta, double delta_low = 0.0009765625,
                          unsigned precision_bits = 128);

/// Finite-horizon lower/upper distribution proxies of the orbit-distance
/// statistics: sliding occupation fractions over windows of length
/// `window` (default 16). F_lower/F_upper sweep windows over the tail of
/// the horizon (transients discarded); F_lower_all/F_upper_all sweep the
/// whole horizon and pick up early shadowing bursts. All four are monotone
/// in t with lower <= upper pointwise by construction.
struct DistFns {
    std::vector<double> t_grid;
    std::vector<double> F_lower;
    std::vector<double> F_upper;
    std::vector<double> F_lower_all;
    std::vector<double> F_upper_all;
    double tail_min = 0; // raw distance extremes over the tail
    double tail_max = 0;
    unsigned horizon = 0;
    unsigned window = 0;
};

DistFns dist_fns(const PwlMap& f, const Rat& x, const Rat& y, unsigned horizon,
                 std::vector<double> t_grid = {}, unsigned window = 0,
                 unsigned precision_bits = 128);

std::string dist_fns_csv(const DistFns& d);

/// Strongest distributional-chaos class supported by some sampled pair:
/// DC1 needs a t with F_upper > 0.95 and F_lower < 0.05, DC2 a t with
/// F_upper > 0.95 and a 0.1 gap, DC3 a 0.1 gap anywhere.
EvidenceVerdict dc_classify(const PwlMap& f, unsigned samples, unsigned horizon,
                            unsigned long long rng_seed = 1, unsigned precision_bits = 128);

/// Greedy (A,n,eps)-separated estimate on a uniform seed grid; heuristic.
double seq_entropy_estimate(const PwlMap& f, const std::vector<unsigned>& A, unsigned n,
                            const Rat& eps, unsigned grid);

struct SolenoidCycle {
    unsigned level = 0;   // cycle of period 2^level
    unsigned period = 1;
    std::vector<IntervalQ> hulls; // hulls[i+1] = exact image of hulls[i], closes up
    bool degenerate = false;       // point cycle
};

/// For k = 0..K_max, grows the hull of the tail trajectory under f^{2^k}
/// into an invariant interval and verifies the exact image cycle and its
/// pairwise disjointness; stops at the first k that fails.
std::vector<SolenoidCycle> solenoid_scan(const PwlMap& f, const Rat& x, unsigned K_max,
                                         unsigned horizon, unsigned precision_bits = 192);

} // namespace chaoskit
