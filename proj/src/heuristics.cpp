#include "iabopt/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "iabopt/error.hpp"
#include "iabopt/milp.hpp"
#include "iabopt/oracle.hpp"

namespace iabopt {

std::string search_log_csv(std::span<const SearchLogEntry> log) {
    std::ostringstream out;
    out.precision(17);
    out << "iter,timestamp_s,objective\n";
    for (const SearchLogEntry& e : log) out << e.iter << ',' << e.timestamp_s << ',' << e.objective << '\n';
    return out.str();
}

std::vector<SearchLogEntry> parse_search_log_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || (line != "iter,timestamp_s,objective" && line != "iter,timestamp_s,objective\r"))
        throw Error(ErrorCode::ParseError, "search log needs header 'iter,timestamp_s,objective'");
    std::vector<SearchLogEntry> log;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        SearchLogEntry e;
        char c1 = 0;
        char c2 = 0;
        std::istringstream row(line);
        if (!(row >> e.iter >> c1 >> e.timestamp_s >> c2 >> e.objective) || c1 != ',' || c2 != ',')
            throw Error(ErrorCode::ParseError, "search log line " + std::to_string(line_no) + " is malformed");
        log.push_back(e);
    }
    return log;
}

EvolutionStats evolution_stats(std::span<const SearchLogEntry> log, double near_tol) {
    if (log.empty()) throw Error(ErrorCode::EmptyResults, "search log is empty");
    EvolutionStats s;
    s.initial = log.front().objective;
    s.final_value = log.back().objective;
    s.improvement_pct = s.initial != 0.0 ? (s.final_value - s.initial) / s.initial * 100.0 : 0.0;
    s.time_to_near_final_s = log.back().timestamp_s;
    for (const SearchLogEntry& e : log) {
        if (std::abs(e.objective - s.final_value) <= near_tol * std::abs(s.final_value)) {
            s.time_to_near_final_s = e.timestamp_s;
            break;
        }
    }
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

class SearchRun {
public:
    SearchRun(const ProblemInstance& instance, const LocalSearchOptions& options, SolverBackend& backend,
              ProblemKind problem)
        : work_(instance), options_(options), backend_(backend), problem_(problem), start_(Clock::now()) {}

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
    bool out_of_time() const { return elapsed() >= options_.global_time_limit_s; }

    /// Solves with every frontend fixed at `power` except `free_fe`, which gets `free_plan`.
    std::optional<NetworkSolution> solve(const std::vector<double>& power, std::optional<std::size_t> free_fe = {},
                                         const PowerPlan& free_plan = ContinuousPower{}) {
        const double remaining = options_.global_time_limit_s - elapsed();
        if (remaining <= 0.0) return std::nullopt;
        for (std::size_t r = 0; r < power.size(); ++r) work_.power[r] = FixedPower{power[r]};
        if (free_fe) work_.power[*free_fe] = free_plan;
        SolverOptions opts = options_.solver;
        opts.time_limit_s = std::min(opts.time_limit_s, remaining);
        ++state.solves;
        NetworkSolution sol = solve_problem(work_, problem_, opts, backend_);
        if (!sol.has_values()) return std::nullopt;
        return sol;
    }

    void accept(const std::vector<double>& power, const NetworkSolution& sol) {
        state.curr_best_sol = power;
        state.curr_best_obj = sol.objective;
        state.log.push_back({state.solves, elapsed(), sol.objective});
        best = sol;
    }

    bool improves(double candidate, double incumbent) const {
        const double tol = options_.rel_tol * std::max(1.0, std::abs(incumbent));
        return problem_ == ProblemKind::Throughput ? candidate > incumbent + tol : candidate < incumbent - tol;
    }

    SearchState state;
    NetworkSolution best;

private:
    ProblemInstance work_;
    const LocalSearchOptions& options_;
    SolverBackend& backend_;
    ProblemKind problem_;
    Clock::time_point start_;
};

struct PowerRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Lowest and highest power of each frontend's plan. Fixed plans give lo == hi.
std::vector<PowerRange> power_ranges(const ProblemInstance& instance) {
    std::vector<PowerRange> out;
    for (const PowerPlan& plan : instance.power) {
        const auto c = power_candidates(plan, instance.radio.p_max_mw);
        out.push_back({*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())});
    }
    return out;
}

/// One pass over the frontends toggling each between the ends of its power
/// range. Returns whether a strict improvement over the value at the start
/// of the pass was found.
bool toggle_sweep(SearchRun& run, const std::vector<PowerRange>& range, bool accept_ties) {
    const double start_obj = run.state.curr_best_obj;
    for (std::size_t r = 0; r < run.state.curr_best_sol.size(); ++r) {
        if (run.out_of_time()) break;
        if (range[r].lo == range[r].hi) continue;
        std::vector<double> trial = run.state.curr_best_sol;
        trial[r] = trial[r] == range[r].hi ? range[r].lo : range[r].hi;
        auto sol = run.solve(trial);
        if (!sol) continue;
        const bool ok = accept_ties ? sol->objective >= run.state.curr_best_obj
                                    : run.improves(sol->objective, run.state.curr_best_obj);
        if (ok) run.accept(trial, *sol);
    }
    return run.improves(run.state.curr_best_obj, start_obj);
}

}  // namespace

HeuristicResult local_search_throughput(const ProblemInstance& instance, const LocalSearchOptions& options,
                                        SolverBackend& backend) {
    validate(instance);
    SearchRun run(instance, options, backend, ProblemKind::Throughput);
    const auto range = power_ranges(instance);
    std::vector<double> start;
    for (const PowerRange& r : range) start.push_back(r.hi);
    auto first = run.solve(start);
    if (!first) throw Error(ErrorCode::NoFeasibleStart, "initial solve with every frontend at full power failed");
    run.accept(start, *first);

    HeuristicResult result;
    // Phase 1: ties accepted, outer loop driven by objective progress only.
    do {
        run.state.prev_best_obj = run.state.curr_best_obj;
        toggle_sweep(run, range, true);
        ++result.phase1_sweeps;
    } while (run.improves(run.state.curr_best_obj, run.state.prev_best_obj) && !run.out_of_time());
    // Ties may have moved the incumbent; re-sweep strictly so the fixed point
    // admits no improving single toggle.
    while (!run.out_of_time()) {
        ++result.phase1_sweeps;
        if (!toggle_sweep(run, range, false)) break;
    }
    result.phase1_power = run.state.curr_best_sol;
    result.phase1_objective = run.state.curr_best_obj;

    // Phase 2: one frontend at a time over its whole power domain
    // (continuous for Continuous plans).
    bool improved = true;
    while (improved && !run.out_of_time()) {
        improved = false;
        run.state.prev_best_obj = run.state.curr_best_obj;
        for (std::size_t r = 0; r < instance.frontend_count(); ++r) {
            if (std::holds_alternative<FixedPower>(instance.power[r])) continue;
            auto sol = run.solve(run.state.curr_best_sol, r, instance.power[r]);
            if (!sol || !run.improves(sol->objective, run.state.curr_best_obj)) continue;
            std::vector<double> power = run.state.curr_best_sol;
            power[r] = sol->power_mw[r];
            run.accept(power, *sol);
            improved = true;
        }
    }

    auto final_sol = run.solve(run.state.curr_best_sol);
    result.solution = final_sol ? *final_sol : run.best;
    result.solution.runtime_s = run.elapsed();
    result.state = run.state;
    return result;
}

HeuristicResult local_search_energy(const ProblemInstance& instance, const LocalSearchOptions& options,
                                    SolverBackend& backend) {
    validate(instance);
    for (const Commodity& c : instance.commodities)
        if (!(c.demand_mbps >= 0.0)) throw Error(ErrorCode::DemandMissing, "energy search needs demands");
    const auto t0 = Clock::now();
    HeuristicResult thr = local_search_throughput(instance, options, backend);
    const double z = thr.solution.objective;
    for (const Commodity& c : instance.commodities) {
        if (c.demand_mbps > 0.0 && c.demand_mbps >= z)
            throw Error(ErrorCode::DemandExceedsMaxMin, "demand " + std::to_string(c.demand_mbps) +
                                                            " Mbps reaches the max-min rate " + std::to_string(z));
    }

    LocalSearchOptions rest = options;
    rest.global_time_limit_s =
        std::max(1e-3, options.global_time_limit_s - std::chrono::duration<double>(Clock::now() - t0).count());
    SearchRun run(instance, rest, backend, ProblemKind::Energy);
    auto first = run.solve(thr.state.curr_best_sol);
    if (!first) throw Error(ErrorCode::NoFeasibleStart, "energy model at the throughput powers has no solution");
    run.accept(thr.state.curr_best_sol, *first);

    const DiscretePower grid = power_grid(instance.radio.p_max_mw, options.energy_grid_levels);
    bool improved = true;
    while (improved && !run.out_of_time()) {
        improved = false;
        run.state.prev_best_obj = run.state.curr_best_obj;
        for (std::size_t r = 0; r < instance.frontend_count(); ++r) {
            const PowerPlan& plan = instance.power[r];
            if (std::holds_alternative<FixedPower>(plan)) continue;
            // The energy model is linear only on a finite grid.
            auto sol = run.solve(run.state.curr_best_sol, r,
                                 std::holds_alternative<DiscretePower>(plan) ? plan : PowerPlan{grid});
            if (!sol || !run.improves(sol->objective, run.state.curr_best_obj)) continue;
            std::vector<double> power = run.state.curr_best_sol;
            power[r] = sol->power_mw[r];
            run.accept(power, *sol);
            improved = true;
        }
    }

    HeuristicResult result;
    result.solution = run.best;
    result.solution.runtime_s = std::chrono::duration<double>(Clock::now() - t0).count();
    result.state = run.state;
    result.phase1_sweeps = thr.phase1_sweeps;
    result.phase1_power = thr.phase1_power;
    result.phase1_objective = thr.phase1_objective;
    return result;
}

std::vector<RankedEdge> rank_edges(const MeasurementGraph& graph, const RadioParams& radio) {
    std::vector<RankedEdge> ranked;
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const Edge& edge = graph.edge_at(e);
        if (edge.kind != EdgeKind::Wireless) continue;
        const Node& rx = graph.node(edge.dst);
        const double g = tx_gain_dbi(graph.node(edge.src), rx.pos, radio) + rx_gain_dbi(rx, true, radio);
        ranked.push_back({e, g - edge.pathloss_db});
    }
    std::sort(ranked.begin(), ranked.end(), [&](const RankedEdge& a, const RankedEdge& b) {
        if (a.metric_db != b.metric_db) return a.metric_db > b.metric_db;
        const Edge& x = graph.edge_at(a.edge);
        const Edge& y = graph.edge_at(b.edge);
        return std::pair(x.src, x.dst) < std::pair(y.src, y.dst);
    });
    return ranked;
}

MeasurementGraph prune_graph(const MeasurementGraph& graph, int k, const RadioParams& radio) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "retention count must be >= 1");
    std::vector<int> kept_in(graph.node_count(), 0);
    std::vector<std::size_t> keep;
    for (std::size_t e = 0; e < graph.edge_count(); ++e)
        if (graph.edge_at(e).kind == EdgeKind::Wired) keep.push_back(e);
    for (const RankedEdge& r : rank_edges(graph, radio)) {
        const std::size_t dst = graph.index_of(graph.edge_at(r.edge).dst);
        if (kept_in[dst] < k) {
            ++kept_in[dst];
            keep.push_back(r.edge);
        }
    }
    return subgraph(graph, keep);
}

void validate(const PruneParams& p) {
    if (p.k0 < 1 || p.k_max < p.k0 || p.step < 1)
        throw Error(ErrorCode::InvalidArgument, "prune parameters need 1 <= k0 <= k_max and step >= 1");
}

ReductionResult selective_reduction(const ProblemInstance& instance, const PruneParams& params, ProblemKind problem,
                                    const SolverOptions& options, SolverBackend& backend) {
    validate(params);
    validate(instance);
    ReductionResult result;
    const auto t0 = Clock::now();
    for (int k = params.k0; k <= params.k_max; k += params.step) {
        ProblemInstance pruned = with_graph(instance, prune_graph(instance.graph, k, instance.radio));
        NetworkSolution sol = solve_problem(pruned, problem, options, backend);
        result.attempts.push_back({k, sol.status, sol.objective, sol.runtime_s});
        const bool usable = sol.has_values() && (problem == ProblemKind::Energy || sol.objective > 1e-9);
        if (!usable) continue;
        result.solution = remap_solution(sol, pruned.graph, instance.graph);
        const ValidationReport report = validate_solution(instance, result.solution);
        if (!report.ok) {
            throw Error(ErrorCode::ExtractionMismatch,
                        "pruned solution fails on the full graph: " + std::string(to_string(report.violations[0].rule)) +
                            " at " + report.violations[0].location);
        }
        result.solution.runtime_s = std::chrono::duration<double>(Clock::now() - t0).count();
        result.k = k;
        return result;
    }
    throw Error(ErrorCode::NoFeasibleWithinKmax,
                "no feasible pruned problem up to k = " + std::to_string(params.k_max));
}

}  // namespace iabopt
