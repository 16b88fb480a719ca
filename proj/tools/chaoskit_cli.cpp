#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "chaoskit/families.hpp"
#include "chaoskit/report.hpp"

using namespace chaoskit;

int main(int argc, char** argv) {
    CLI::App app{"chaoskit: exact chaos analysis of piecewise-linear interval maps"};
    app.require_subcommand(1);

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "run the analysis pipeline on a map");
    std::string spec;
    AnalysisConfig cfg;
    std::string mixing_eps = "1/32";
    std::string out_path;
    analyze_cmd->add_option("spec", spec, "catalog name, map-spec JSON, or .json path")->required();
    analyze_cmd->add_option("--periods", cfg.period_bound, "period search bound");
    analyze_cmd->add_option("--lap-n", cfg.entropy_lap_n, "lap-count upper bound iterate");
    analyze_cmd->add_option("--orbit-sup", cfg.orbit_sup_bound, "orbit-sup lower bound N");
    analyze_cmd->add_option("--horseshoe-power", cfg.horseshoe_powers, "powers to search");
    analyze_cmd->add_option("--depth", cfg.horseshoe_depth, "horseshoe refinement depth");
    analyze_cmd->add_option("--mixing-eps", mixing_eps, "mixing margin (rational)");
    analyze_cmd->add_option("--scale", cfg.evidence_scale, "dyadic evidence scale k (2^-k)");
    analyze_cmd->add_option("--horizon", cfg.evidence_horizon, "evidence iterate horizon");
    analyze_cmd->add_option("--ly-pairs", cfg.ly_pairs, "Li-Yorke pair sample count");
    analyze_cmd->add_option("--ly-horizon", cfg.ly_horizon, "Li-Yorke scan horizon");
    analyze_cmd->add_option("--dc-samples", cfg.dc_samples, "distributional-chaos pair samples");
    analyze_cmd->add_option("--dc-horizon", cfg.dc_horizon, "distributional-chaos horizon");
    analyze_cmd->add_option("--solenoid-kmax", cfg.solenoid_kmax, "solenoid scan max level");
    analyze_cmd->add_option("--precision", cfg.precision_bits, "trajectory precision bits");
    analyze_cmd->add_option("--seed", cfg.rng_seed, "RNG seed for pair sampling");
    analyze_cmd->add_flag("--timing", cfg.with_timing, "include wall-clock timing (non-deterministic)");
    analyze_cmd->add_option("--out", out_path, "write the report JSON here (default stdout)");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "emit CSV plot data");
    std::string plot_spec, plot_kind, plot_out;
    std::string x0 = "0", y0 = "0";
    PlotParams pp;
    plot_cmd->add_option("spec", plot_spec, "catalog name, map-spec JSON, or .json path")->required();
    plot_cmd->add_option("--kind", plot_kind, "graph|cobweb|orbit|distfn")->required();
    plot_cmd->add_option("--x0", x0, "seed (rational)");
    plot_cmd->add_option("--y0", y0, "second seed for distfn (rational)");
    plot_cmd->add_option("--n", pp.n, "steps for cobweb/orbit");
    plot_cmd->add_option("--horizon", pp.horizon, "horizon for distfn");
    plot_cmd->add_option("--out", plot_out, "output CSV path")->required();

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "catalog utilities");
    bool list = false;
    catalog_cmd->add_flag("--list", list, "list catalog identifiers");

    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("CHAOSKIT_BUDGET_PIECES")) {
        cfg.budgets.max_pieces = std::strtoull(env, nullptr, 10);
    }

    try {
        if (*analyze_cmd) {
            cfg.mixing_eps = Rat::parse(mixing_eps);
            ChaosReport rep = analyze(spec, cfg);
            if (out_path.empty()) {
                std::cout << rep.json_text;
            } else {
                std::ofstream out(out_path);
                out << rep.json_text;
            }
            return rep.partial ? 2 : 0;
        }
        if (*plot_cmd) {
            pp.x0 = Rat::parse(x0);
            pp.y0 = Rat::parse(y0);
            std::string csv = plotdata(plot_spec, plot_kind, pp);
            std::ofstream out(plot_out);
            out << csv;
            return 0;
        }
        if (*catalog_cmd) {
            for (const auto& name : catalog_names()) std::cout << name << "\n";
            (void)list;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
