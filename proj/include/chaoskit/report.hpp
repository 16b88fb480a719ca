#pragma once

#include <string>
#include <vector>

#include "chaoskit/chaos_stats.hpp"
#include "chaoskit/entropy.hpp"
#include "chaoskit/pwl.hpp"

namespace chaoskit {

struct AnalysisConfig {
    unsigned period_bound = 10;      // N for periods_up_to / infer_type
    unsigned entropy_lap_n = 10;     // lap-count upper bound at this n
    unsigned orbit_sup_bound = 6;    // N for the orbit-sup lower bound
    std::vector<unsigned> horseshoe_powers = {1, 2};
    unsigned horseshoe_depth = 3;
    Rat mixing_eps = Rat(1, 32);
    unsigned evidence_scale = 5;     // dyadic scale 2^-k
    unsigned evidence_horizon = 20;
    unsigned ly_pairs = 32;
    double ly_delta = 0.25;          // fraction of the domain diameter
    unsigned ly_horizon = 4096;
    unsigned dc_samples = 24;
    unsigned dc_horizon = 4096;
    unsigned solenoid_kmax = 3;
    unsigned solenoid_horizon = 512;
    unsigned precision_bits = 128;
    unsigned long long rng_seed = 1;
    bool with_timing = false;        // timing breaks byte-level determinism
    Budgets budgets;
};

struct ChaosReport {
    std::string json_text; // schema "chaoskit-report/1", deterministic layout
    bool partial = false;  // some section hit a budget and was skipped
};

/// Runs the full pipeline on a catalog name, a map-spec JSON string, or a
/// path to a map-spec file.
ChaosReport analyze(const std::string& spec_or_catalog, const AnalysisConfig& config);

/// Map-spec JSON: {"domain": ["p/q","r/s"], "nodes": [["x","y"], ...]};
/// the writer emits lowest terms, so write(read(s)) is a fixed point.
PwlMap read_map_spec(const std::string& json_text);
std::string write_map_spec(const PwlMap& f);

/// Resolves a CLI map argument: catalog name, inline JSON, or a file path.
PwlMap resolve_map(const std::string& spec_or_catalog);

struct PlotParams {
    Rat x0;
    Rat y0;
    unsigned n = 20;
    unsigned horizon = 1000;
    unsigned precision_bits = 128;
};

/// CSV plot data: graph (node polyline), cobweb, orbit, or distfn.
std::string plotdata(const std::string& spec_or_catalog, const std::string& kind,
                     const PlotParams& params);

} // namespace chaoskit
