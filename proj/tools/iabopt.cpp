#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iabopt/cli.hpp"
#include "iabopt/error.hpp"
#include "iabopt/graph_io.hpp"

using namespace iabopt;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << text;
}

// "0-23,48,50-52"
std::vector<int> parse_hours(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        const auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoi(part));
            } else {
                const int a = std::stoi(part.substr(0, dash));
                const int b = std::stoi(part.substr(dash + 1));
                if (b < a) throw std::invalid_argument(part);
                for (int h = a; h <= b; ++h) out.push_back(h);
            }
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad hour list '" + text + "'");
        }
    }
    return out;
}

struct ScenarioArgs {
    std::string config;
    std::string profile;
    double load = 0.0;
    int hour = 0;

    void add(CLI::App* cmd, bool required) {
        auto* c = cmd->add_option("--config", config, "scenario config JSON")->check(CLI::ExistingFile);
        if (required) c->required();
        cmd->add_option("--profile", profile, "load profile CSV (hour,p)")->check(CLI::ExistingFile);
        cmd->add_option("--load", load, "explicit load p in (0, 1] instead of a profile");
        cmd->add_option("--hour", hour, "hour index");
    }

    std::pair<ScenarioConfig, Scenario> build() const {
        ScenarioConfig cfg = load_scenario_config(config);
        if (!profile.empty()) return {cfg, generate(cfg, load_profile_csv(profile), hour)};
        if (!(load > 0.0 && load <= 1.0)) throw Error(ErrorCode::BadRange, "--load must be in (0, 1]");
        return {cfg, generate_at_load(cfg, load, hour)};
    }
};

void add_solver_flags(CLI::App* cmd, RunSettings& s) {
    cmd->add_option("--time-limit", s.solver.time_limit_s, "per-solve time limit in seconds");
    cmd->add_option("--rel-gap", s.solver.rel_gap, "relative MIP gap");
    cmd->add_option("--global-time-limit", s.search.global_time_limit_s, "local-search budget in seconds");
    cmd->add_option("--k0", s.prune.k0, "initial retention count");
    cmd->add_option("--k-max", s.prune.k_max, "maximum retention count");
    cmd->add_option("--k-step", s.prune.step, "retention increment");
    cmd->add_option("--grid-levels", s.search.energy_grid_levels, "power levels of the energy refinement grid");
    cmd->add_flag("--no-timing", [&s](std::int64_t) { s.timing = false; }, "write zero runtimes");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IAB topology and power optimization"};
    app.require_subcommand(1);

    // scenario-gen
    auto* gen = app.add_subcommand("scenario-gen", "generate a measurement graph for one hour");
    ScenarioArgs gen_args;
    gen_args.add(gen, true);
    std::string gen_out;
    gen->add_option("--out-dir", gen_out, "output directory")->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
    ScenarioArgs solve_args;
    solve_args.add(solve_cmd, false);
    std::string graph_path;
    std::string settings_path;
    std::string method_text = "exact";
    std::string problem_text = "throughput";
    std::string solve_out;
    RunSettings solve_settings;
    solve_cmd->add_option("--graph", graph_path, "graph JSON from scenario-gen")->check(CLI::ExistingFile);
    solve_cmd->add_option("--settings", settings_path, "instance settings JSON from scenario-gen")->check(CLI::ExistingFile);
    solve_cmd->add_option("--method", method_text, "local-search | selective-reduction | exact");
    solve_cmd->add_option("--problem", problem_text, "throughput | energy");
    solve_cmd->add_option("--out", solve_out, "solution JSON path");
    add_solver_flags(solve_cmd, solve_settings);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run methods over hours of a load profile");
    std::string sweep_config;
    std::string sweep_profile;
    std::string sweep_hours;
    std::vector<std::string> sweep_methods{"local-search", "selective-reduction"};
    std::vector<std::string> sweep_problems{"throughput"};
    std::string sweep_out;
    std::uint64_t sweep_seed = 0;
    int workers = 1;
    RunSettings sweep_settings;
    sweep->add_option("--config", sweep_config, "scenario config JSON")->required()->check(CLI::ExistingFile);
    sweep->add_option("--profile", sweep_profile, "load profile CSV")->required()->check(CLI::ExistingFile);
    sweep->add_option("--hours", sweep_hours, "hour list, e.g. 0-23,48")->required();
    sweep->add_option("--methods", sweep_methods, "methods")->delimiter(',');
    sweep->add_option("--problems", sweep_problems, "problems")->delimiter(',');
    sweep->add_option("--out-dir", sweep_out, "output directory")->required();
    sweep->add_option("--seed", sweep_seed, "scenario seed")->required();
    sweep->add_option("--workers", workers, "parallel hour workers")->check(CLI::PositiveNumber);
    add_solver_flags(sweep, sweep_settings);

    // report
    auto* report = app.add_subcommand("report", "summaries of a results CSV");
    std::string report_results;
    std::string report_out;
    std::string report_traces;
    report->add_option("--results", report_results, "results CSV")->required()->check(CLI::ExistingFile);
    report->add_option("--out-dir", report_out, "output directory")->required();
    report->add_option("--traces", report_traces, "search trace directory (default: traces/ next to results)");

    // validate
    auto* val = app.add_subcommand("validate", "re-check a solution file");
    std::string val_solution;
    std::string val_graph;
    val->add_option("--solution", val_solution, "solution JSON")->required()->check(CLI::ExistingFile);
    val->add_option("--graph", val_graph, "graph JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*gen) {
            auto [cfg, scenario] = gen_args.build();
            const ProblemInstance inst = scenario_instance(cfg, scenario);
            fs::create_directories(gen_out);
            save_graph(scenario.graph, fs::path(gen_out) / "graph.json");
            write_text(fs::path(gen_out) / "instance.json", instance_settings_to_json(inst).dump(1) + "\n");
            const std::size_t units = scenario.graph.node_count() - scenario.graph.frontends().size() -
                                      scenario.graph.ues().size();
            std::printf("hour %d load %.6g: %zu units, %zu frontends, %zu UEs, %zu edges\n", scenario.hour,
                        scenario.load, units, scenario.graph.frontends().size(), scenario.graph.ues().size(),
                        scenario.graph.edge_count());
            return kExitOk;
        }
        if (*solve_cmd) {
            const auto method = parse_method(method_text);
            const auto problem = parse_problem_kind(problem_text);
            if (!method || !problem) throw Error(ErrorCode::ParseError, "unknown --method or --problem");
            ProblemInstance inst = [&] {
                if (!graph_path.empty() && !settings_path.empty())
                    return instance_from_json(load_graph(graph_path),
                                              parse_json_text(read_text_file(settings_path), settings_path));
                if (solve_args.config.empty())
                    throw Error(ErrorCode::InvalidArgument, "solve needs --graph/--settings or --config");
                auto [cfg, scenario] = solve_args.build();
                return scenario_instance(cfg, scenario);
            }();
            auto backend = make_default_backend();
            RunOutput run = run_method(inst, *method, *problem, solve_settings, *backend, solve_args.hour);
            std::fputs(results_csv({run.record}).c_str(), stdout);
            if (!run.error.empty()) std::fprintf(stderr, "%s\n", run.error.c_str());
            if (run.solution && !solve_out.empty())
                write_text(solve_out, solution_file_json(inst, *run.solution).dump(1) + "\n");
            return run.record.status == SolveStatus::Error ? kExitInput : kExitOk;
        }
        if (*sweep) {
            SweepRequest req;
            req.config = load_scenario_config(sweep_config);
            req.config.seed = sweep_seed;
            req.profile = load_profile_csv(sweep_profile);
            req.hours = parse_hours(sweep_hours);
            for (const auto& m : sweep_methods) {
                auto method = parse_method(m);
                if (!method) throw Error(ErrorCode::ParseError, "unknown method '" + m + "'");
                req.methods.push_back(*method);
            }
            for (const auto& p : sweep_problems) {
                auto problem = parse_problem_kind(p);
                if (!problem) throw Error(ErrorCode::ParseError, "unknown problem '" + p + "'");
                req.problems.push_back(*problem);
            }
            req.out_dir = sweep_out;
            req.workers = workers;
            req.settings = sweep_settings;
            const auto records = cmd_sweep(req);
            std::printf("%zu runs written to %s\n", records.size(), (fs::path(sweep_out) / "results.csv").c_str());
            return kExitOk;
        }
        if (*report) {
            cmd_report(report_results, report_out,
                       report_traces.empty() ? std::nullopt : std::optional<fs::path>(report_traces));
            std::printf("report written to %s\n", report_out.c_str());
            return kExitOk;
        }
        if (*val) {
            const ValidationReport r = cmd_validate(val_solution, val_graph);
            for (const Violation& v : r.violations)
                std::printf("%s %s %.9g\n", std::string(to_string(v.rule)).c_str(), v.location.c_str(), v.magnitude);
            std::printf("%s (objective %.9g)\n", r.ok ? "ok" : "invalid", r.recomputed_objective);
            return r.ok ? kExitOk : kExitValidation;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitOk;
}
