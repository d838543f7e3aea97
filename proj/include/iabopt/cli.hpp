#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iabopt/backend.hpp"
#include "iabopt/heuristics.hpp"
#include "iabopt/instance.hpp"
#include "iabopt/oracle.hpp"
#include "iabopt/scenario.hpp"
#include "iabopt/solution.hpp"

namespace iabopt {

enum class Method { LocalSearch, SelectiveReduction, Exact };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view text) noexcept;

/// One row of the results CSV.
struct RunRecord {
    int hour = 0;
    Method method = Method::Exact;
    ProblemKind problem = ProblemKind::Throughput;
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    double min_ue_mbps = 0.0;
    int activated_frontends = 0;
    double p_total_w = 0.0;
    std::optional<double> eta_mbps_per_w;
    double runtime_s = 0.0;
};

inline constexpr std::string_view kResultsHeader =
    "hour,method,problem,status,objective,min_ue_mbps,activated_frontends,p_total_w,eta_mbps_per_w,runtime_s";

/// Rows are written with 9 significant digits; a missing eta is an empty field.
std::string results_csv(const std::vector<RunRecord>& records);
/// Throws ParseError on a wrong header or malformed row.
std::vector<RunRecord> parse_results_csv(std::string_view text);

struct RunSettings {
    SolverOptions solver;
    LocalSearchOptions search;
    PruneParams prune;
    bool timing = true;  // false zeroes runtimes and trace timestamps for reproducible files
};

struct RunOutput {
    RunRecord record;
    std::optional<NetworkSolution> solution;
    std::vector<SearchLogEntry> trace;  // local search only
    std::string error;
};

/// Runs one method on one instance. Failures become status rows.
RunOutput run_method(const ProblemInstance& instance, Method method, ProblemKind problem, const RunSettings& settings,
                     SolverBackend& backend, int hour = 0);

/// Solution file: {"settings": instance settings, "solution": solution}.
nlohmann::json solution_file_json(const ProblemInstance& instance, const NetworkSolution& solution);

struct SweepRequest {
    ScenarioConfig config;
    LoadProfile profile;
    std::vector<Method> methods;
    std::vector<ProblemKind> problems;
    std::vector<int> hours;
    std::filesystem::path out_dir;
    int workers = 1;
    RunSettings settings;
};

/// Generates every hour, runs every (method, problem) and writes
/// out_dir/results.csv, out_dir/solutions/*.json and out_dir/traces/*.csv.
/// Returns the records sorted by (hour, method, problem).
std::vector<RunRecord> cmd_sweep(const SweepRequest& request);

struct CdfPoint {
    double value = 0.0;
    double cdf = 0.0;
};

/// Empirical CDF: sorted values with cdf = i/n.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

struct TraceSummary {
    std::string name;
    EvolutionStats stats;
};

/// Writes throughput_cdf.csv, eta_cdf.csv, activation.csv and, when traces
/// exist, evolution.csv into out_dir. Throws EmptyResults.
void cmd_report(const std::filesystem::path& results_csv_path, const std::filesystem::path& out_dir,
                const std::optional<std::filesystem::path>& traces_dir = {});

/// Re-validates a solution file against a graph. Throws ParseError on bad input.
ValidationReport cmd_validate(const std::filesystem::path& solution_json, const std::filesystem::path& graph_json);

}  // namespace iabopt
