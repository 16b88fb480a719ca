#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "chaoskit/families.hpp"
#include "chaoskit/report.hpp"

using namespace chaoskit;
using nlohmann::json;

namespace {

AnalysisConfig fast_config() {
    AnalysisConfig cfg;
    cfg.period_bound = 8;
    cfg.entropy_lap_n = 8;
    cfg.orbit_sup_bound = 4;
    cfg.horseshoe_powers = {1, 2};
    cfg.evidence_scale = 4;
    cfg.evidence_horizon = 16;
    cfg.ly_pairs = 8;
    cfg.ly_horizon = 8192;
    cfg.dc_samples = 12;
    cfg.dc_horizon = 4096;
    cfg.solenoid_horizon = 256;
    return cfg;
}

} // namespace

TEST_CASE("map spec round trip is a fixed point") {
    PwlMap f = stefan_map(5);
    std::string once = write_map_spec(f);
    std::string twice = write_map_spec(read_map_spec(once));
    CHECK(once == twice);

    // inputs are canonicalized to lowest terms
    PwlMap g = read_map_spec(R"({"domain":["0/2","4/4"],"nodes":[["0","0"],["2/4","2/2"],["1","0"]]})");
    CHECK(g == tent(2));
    CHECK(write_map_spec(g) ==
          R"({"domain":["0","1"],"nodes":[["0","0"],["1/2","1"],["1","0"]]})");

    CHECK_THROWS_AS(read_map_spec("{"), Error);
    CHECK_THROWS_AS(read_map_spec(R"({"nodes":[]})"), Error);
}

TEST_CASE("analyze tent map: exact entropy and type 3") {
    ChaosReport rep = analyze("tent:2", fast_config());
    json j = json::parse(rep.json_text);
    CHECK(j["schema"] == "chaoskit-report/1");
    CHECK_FALSE(rep.partial);

    CHECK(j["entropy"]["exact"] == true);
    CHECK(j["entropy"]["lower"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(j["entropy"]["upper"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-9));

    CHECK(j["periods"]["type"]["kind"] == "finite");
    CHECK(j["periods"]["type"]["period"] == 3);
    CHECK(j["periods"]["forced_tail_consistent"] == true);

    CHECK(j["horseshoes"][0]["found"] == true);
    CHECK(j["evidence"]["mixing"]["positive"] == true);
    CHECK(j["evidence"]["devaney"]["positive"] == true);
    CHECK(j["distributional"]["kind"] == "DC1");
    CHECK(j["li_yorke"]["candidate_fraction"].get<double>() > 0.3);
}

TEST_CASE("analyze S map: entropy (log 2)/2 and type 6") {
    ChaosReport rep = analyze("smap", fast_config());
    json j = json::parse(rep.json_text);
    CHECK(j["entropy"]["exact"] == true);
    CHECK(j["entropy"]["lower"].get<double>() == doctest::Approx(std::log(2.0) / 2).epsilon(1e-9));
    CHECK(j["entropy"]["upper"].get<double>() == doctest::Approx(std::log(2.0) / 2).epsilon(1e-9));
    CHECK(j["periods"]["type"]["kind"] == "finite");
    CHECK(j["periods"]["type"]["period"] == 6);
    CHECK(j["evidence"]["mixing"]["positive"] == false);
    CHECK(j["evidence"]["devaney"]["positive"] == true);
}

TEST_CASE("analyze type:8 tower") {
    AnalysisConfig cfg = fast_config();
    cfg.period_bound = 8;
    ChaosReport rep = analyze("type:8", cfg);
    json j = json::parse(rep.json_text);
    std::vector<unsigned> periods = j["periods"]["realized"].get<std::vector<unsigned>>();
    CHECK(periods == std::vector<unsigned>{1, 2, 4, 8});
    CHECK(j["entropy"]["lower"].get<double>() <= 1e-9);
    CHECK(j["distributional"]["kind"] == "none");
}

TEST_CASE("reports are byte-identical for identical config") {
    AnalysisConfig cfg = fast_config();
    ChaosReport a = analyze("stefan:3", cfg);
    ChaosReport b = analyze("stefan:3", cfg);
    CHECK(a.json_text == b.json_text);
}

TEST_CASE("report internal consistency") {
    for (const std::string& name : {"tent:3", "stefan:5", "type:4", "ttent:3/4"}) {
        json j = json::parse(analyze(name, fast_config()).json_text);
        double lower = j["entropy"]["lower"].get<double>();
        double upper = j["entropy"]["upper"].get<double>();
        CHECK(lower <= upper + 1e-9);
        std::string dc = j["distributional"]["kind"].get<std::string>();
        if ((dc == "DC1" || dc == "DC2") && lower <= 1e-12)
            CHECK(j["distributional"].contains("zero_entropy_consistent_flag"));
    }
}

TEST_CASE("budget errors produce a partial report, not an abort") {
    AnalysisConfig cfg = fast_config();
    cfg.budgets.max_pieces = 8; // everything heavier than one compose blows up
    ChaosReport rep = analyze("tent:2", cfg);
    CHECK(rep.partial);
    json j = json::parse(rep.json_text);
    CHECK(j["partial"] == true);
    CHECK(j.contains("sections"));
}

TEST_CASE("plotdata kinds") {
    PlotParams pp;
    std::string graph = plotdata("tent:2", "graph", pp);
    CHECK(graph == "x,y\n0,0\n0.5,1\n1,0\n");

    pp.x0 = Rat(1, 5);
    pp.n = 20;
    std::string cobweb = plotdata("tent:2", "cobweb", pp);
    std::size_t rows = std::count(cobweb.begin(), cobweb.end(), '\n');
    CHECK(rows == 42); // header + start + 2 per step

    pp.n = 16;
    std::string orbit = plotdata("tent:2", "orbit", pp);
    CHECK(std::count(orbit.begin(), orbit.end(), '\n') == 18); // header + 17 values

    pp.x0 = Rat(1, 2147483647);
    pp.y0 = Rat(2, 2147483647);
    pp.horizon = 512;
    std::string distfn = plotdata("tent:2", "distfn", pp);
    CHECK(distfn.substr(0, 18) == "t,F_lower,F_upper\n");

    CHECK_THROWS_AS(plotdata("tent:2", "waterfall", pp), Error);
}
