#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iabopt/backend.hpp"
#include "iabopt/instance.hpp"
#include "iabopt/solution.hpp"

namespace iabopt {

struct SearchLogEntry {
    int iter = 0;              // solver calls made when the value was accepted
    double timestamp_s = 0.0;  // since the start of the run
    double objective = 0.0;
};

/// Incumbent of a local search. The log holds accepted objective values only.
struct SearchState {
    std::vector<double> curr_best_sol;  // power per frontend ordinal, mW
    double curr_best_obj = 0.0;
    double prev_best_obj = 0.0;
    std::vector<SearchLogEntry> log;
    int solves = 0;
};

/// CSV `iter,timestamp_s,objective`.
std::string search_log_csv(std::span<const SearchLogEntry> log);
std::vector<SearchLogEntry> parse_search_log_csv(std::string_view text);

struct EvolutionStats {
    double initial = 0.0;
    double final_value = 0.0;
    double improvement_pct = 0.0;
    double time_to_near_final_s = 0.0;  // first entry within near_tol of the final value
};

/// Throws EmptyResults on an empty log.
EvolutionStats evolution_stats(std::span<const SearchLogEntry> log, double near_tol = 0.01);

struct LocalSearchOptions {
    SolverOptions solver;               // time_limit_s applies per solve
    double global_time_limit_s = 2400.0;
    double rel_tol = 1e-6;              // strict improvement threshold
    int energy_grid_levels = 9;         // refinement grid for Continuous plans
};

struct HeuristicResult {
    NetworkSolution solution;
    SearchState state;
    int phase1_sweeps = 0;
    std::vector<double> phase1_power;  // fixed point of the toggle phase
    double phase1_objective = 0.0;
};

/// Two-phase search for max-min throughput inside each frontend's power plan.
/// Phase 1 toggles one frontend at a time between the lowest and highest
/// power of its plan (ties accepted), then re-sweeps with strict acceptance
/// until no single toggle improves. Phase 2 frees one frontend at a time to
/// its whole plan (continuous for Continuous plans). Fixed plans are never
/// moved. Throws NoFeasibleStart.
HeuristicResult local_search_throughput(const ProblemInstance& instance, const LocalSearchOptions& options,
                                        SolverBackend& backend);

/// Throughput search, then the energy model at those powers, then one
/// frontend at a time on its plan accepting strictly lower power. Continuous
/// plans are refined on power_grid(p_max, energy_grid_levels).
/// Throws DemandExceedsMaxMin when a positive demand reaches the max-min rate.
HeuristicResult local_search_energy(const ProblemInstance& instance, const LocalSearchOptions& options,
                                    SolverBackend& backend);

struct RankedEdge {
    std::size_t edge = 0;
    double metric_db = 0.0;  // tx gain + rx gain - pathloss
};

/// Wireless edges by descending gain minus pathloss, ties by (src, dst).
std::vector<RankedEdge> rank_edges(const MeasurementGraph& graph, const RadioParams& radio);

/// Keeps the k best-ranked incoming wireless edges of every node and every
/// wired edge. Throws InvalidArgument for k < 1.
MeasurementGraph prune_graph(const MeasurementGraph& graph, int k, const RadioParams& radio = {});

struct PruneParams {
    int k0 = 5;
    int k_max = 10;
    int step = 1;
};

void validate(const PruneParams& params);

struct ReductionAttempt {
    int k = 0;
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    double runtime_s = 0.0;
};

struct ReductionResult {
    NetworkSolution solution;  // edge indexing of the original graph
    int k = 0;
    std::vector<ReductionAttempt> attempts;
};

/// Solves on pruned graphs for k = k0, k0+step, ... up to k_max and returns
/// the first feasible result. A throughput optimum of zero counts as
/// infeasible. Throws NoFeasibleWithinKmax.
ReductionResult selective_reduction(const ProblemInstance& instance, const PruneParams& params, ProblemKind problem,
                                    const SolverOptions& options, SolverBackend& backend);

}  // namespace iabopt
