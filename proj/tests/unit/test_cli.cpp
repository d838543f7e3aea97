#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "iabopt/cli.hpp"
#include "iabopt/error.hpp"
#include "iabopt/graph_io.hpp"
#include "iabopt/milp.hpp"

using namespace iabopt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("iabopt_" + tag + "_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) { return read_text_file(p); }

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

ScenarioConfig tiny_config() {
    ScenarioConfig c;
    c.area_km2 = 0.03;
    c.sectors_per_unit = 1;
    c.l_ue_per_gnb = 1.0;
    c.power_levels = 2;
    c.noise_mw = 2e-9;
    c.seed = 4;
    return c;
}

}  // namespace

TEST_CASE("results CSV round trip") {
    std::vector<RunRecord> rows{
        {0, Method::Exact, ProblemKind::Throughput, SolveStatus::Optimal, 123.456789012, 123.456789012, 3, 300.5,
         0.41083, 1.25},
        {5, Method::LocalSearch, ProblemKind::Energy, SolveStatus::Infeasible, 0, 0, 0, 0, std::nullopt, 0},
        {7, Method::SelectiveReduction, ProblemKind::Energy, SolveStatus::TimeLimit, 0, 0, 0, 0, std::nullopt, 60}};
    const std::string csv = results_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == kResultsHeader);
    const auto back = parse_results_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].hour == rows[i].hour);
        CHECK(back[i].method == rows[i].method);
        CHECK(back[i].problem == rows[i].problem);
        CHECK(back[i].status == rows[i].status);
        CHECK(back[i].objective == doctest::Approx(rows[i].objective).epsilon(1e-8));
        CHECK(back[i].activated_frontends == rows[i].activated_frontends);
        CHECK(back[i].eta_mbps_per_w.has_value() == rows[i].eta_mbps_per_w.has_value());
    }
    CHECK(results_csv(back) == csv);
    CHECK_THROWS_AS(parse_results_csv("hour,method\n"), Error);
    CHECK_THROWS_AS(parse_results_csv(std::string(kResultsHeader) + "\n0,exact,throughput,optimal,1,1,1,1,,x\n"), Error);
    CHECK_THROWS_AS(parse_results_csv(std::string(kResultsHeader) + "\n0,magic,throughput,optimal,1,1,1,1,,0\n"), Error);
    CHECK(parse_method("selective-reduction") == Method::SelectiveReduction);
    CHECK_FALSE(parse_method("annealing").has_value());
}

TEST_CASE("empirical CDF") {
    auto one = empirical_cdf({42.0});
    REQUIRE(one.size() == 1);
    CHECK(one[0].value == 42.0);
    CHECK(one[0].cdf == 1.0);
    auto many = empirical_cdf({3.0, 1.0, 2.0, 2.0, 5.0});
    REQUIRE(many.size() == 5);
    for (std::size_t i = 1; i < many.size(); ++i) {
        CHECK(many[i].value >= many[i - 1].value);
        CHECK(many[i].cdf > many[i - 1].cdf);
    }
    CHECK(many.back().cdf == 1.0);
    CHECK(empirical_cdf({}).empty());
}

TEST_CASE("sweep, report and validate on a tiny scenario") {
    TempDir tmp("sweep");
    SweepRequest req;
    req.config = tiny_config();
    req.profile = parse_load_profile("hour,p\n0,1\n1,0.5\n");
    req.methods = {Method::LocalSearch, Method::SelectiveReduction};
    req.problems = {ProblemKind::Throughput};
    req.hours = {0};
    req.out_dir = tmp.path / "a";
    req.settings.timing = false;
    req.settings.prune = {1, 10, 1};

    const auto rows = cmd_sweep(req);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].method == Method::LocalSearch);
    CHECK(rows[1].method == Method::SelectiveReduction);
    for (const RunRecord& r : rows) {
        CHECK(r.status == SolveStatus::Optimal);
        CHECK(r.runtime_s == 0.0);
    }
    const std::string first = slurp(req.out_dir / "results.csv");
    CHECK(parse_results_csv(first).size() == 2);
    CHECK(fs::exists(req.out_dir / "solutions" / "h000_local-search_throughput.json"));
    CHECK(fs::exists(req.out_dir / "traces" / "h000_local-search_throughput.csv"));

    SUBCASE("rerun is byte-identical, also with more workers") {
        req.out_dir = tmp.path / "b";
        req.workers = 2;
        cmd_sweep(req);
        CHECK(slurp(tmp.path / "b" / "results.csv") == first);
    }
    SUBCASE("missing hour and empty method list") {
        SweepRequest bad = req;
        bad.hours = {9};
        CHECK_THROWS_AS(cmd_sweep(bad), Error);
        bad = req;
        bad.methods.clear();
        CHECK_THROWS_AS(cmd_sweep(bad), Error);
    }
    SUBCASE("report") {
        cmd_report(req.out_dir / "results.csv", tmp.path / "report");
        const std::string cdf = slurp(tmp.path / "report" / "throughput_cdf.csv");
        CHECK(cdf.rfind("method,problem,value,cdf\n", 0) == 0);
        CHECK(cdf.find("local-search,throughput,") != std::string::npos);
        CHECK(fs::exists(tmp.path / "report" / "eta_cdf.csv"));
        const std::string act = slurp(tmp.path / "report" / "activation.csv");
        CHECK(std::count(act.begin(), act.end(), '\n') == 3);
        const std::string evo = slurp(tmp.path / "report" / "evolution.csv");
        CHECK(evo.find("h000_local-search_throughput,") != std::string::npos);

        spit(tmp.path / "empty.csv", std::string(kResultsHeader) + "\n");
        try {
            cmd_report(tmp.path / "empty.csv", tmp.path / "r2");
            FAIL("expected EmptyResults");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyResults);
        }
    }
    SUBCASE("validate") {
        const Scenario scen = generate(req.config, req.profile, 0);
        save_graph(scen.graph, tmp.path / "graph.json");
        const fs::path sol_path = req.out_dir / "solutions" / "h000_selective-reduction_throughput.json";
        CHECK(cmd_validate(sol_path, tmp.path / "graph.json").ok);

        nlohmann::json doc = nlohmann::json::parse(slurp(sol_path));
        for (auto& e : doc["solution"]["edges"])
            if (e["chosen"].get<bool>() && e["airtime"].get<double>() > 0.0) {
                e["airtime"] = 1.5;
                break;
            }
        spit(tmp.path / "tampered.json", doc.dump());
        ValidationReport r = cmd_validate(tmp.path / "tampered.json", tmp.path / "graph.json");
        CHECK_FALSE(r.ok);
        CHECK(r.has(ViolationRule::AirtimeBudget));

        ScenarioConfig other = req.config;
        other.seed = 99;
        other.sectors_per_unit = 2;
        save_graph(generate(other, req.profile, 0).graph, tmp.path / "other.json");
        try {
            cmd_validate(sol_path, tmp.path / "other.json");
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
        spit(tmp.path / "junk.json", "{\"solution\": {}}");
        CHECK_THROWS_AS(cmd_validate(tmp.path / "junk.json", tmp.path / "graph.json"), Error);
    }
}

TEST_CASE("run_method turns failures into status rows") {
    ScenarioConfig c = tiny_config();
    c.demand_mbps = 1e6;
    ProblemInstance inst = scenario_instance(c, generate_at_load(c, 1.0, 0));
    auto backend = make_default_backend();
    RunSettings s;
    RunOutput ls = run_method(inst, Method::LocalSearch, ProblemKind::Energy, s, *backend);
    CHECK(ls.record.status == SolveStatus::Infeasible);
    CHECK_FALSE(ls.error.empty());
    CHECK_FALSE(ls.solution.has_value());
    RunOutput ex = run_method(inst, Method::Exact, ProblemKind::Energy, s, *backend);
    CHECK(ex.record.status == SolveStatus::Infeasible);
}
