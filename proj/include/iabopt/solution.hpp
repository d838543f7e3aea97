#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "iabopt/graph.hpp"

namespace iabopt {

enum class ProblemKind { Throughput, Energy };
enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit, Error };

std::string_view to_string(ProblemKind kind) noexcept;
std::string_view to_string(SolveStatus status) noexcept;
std::optional<ProblemKind> parse_problem_kind(std::string_view text) noexcept;
std::optional<SolveStatus> parse_solve_status(std::string_view text) noexcept;

/// A routed network configuration. Frontend vectors are indexed by frontend
/// ordinal, edge vectors by edge index of the graph the solution refers to,
/// flows by commodity position.
struct NetworkSolution {
    ProblemKind problem = ProblemKind::Throughput;
    SolveStatus status = SolveStatus::Error;

    std::vector<double> power_mw;
    std::vector<int> active;
    std::vector<std::size_t> chosen_edges;  // ascending edge indices
    std::vector<double> airtime;
    std::vector<int> mcs_level;             // -1 where no level is unlocked or edge is wired
    std::vector<double> link_rate_mbps;     // c(e): airtime times level capacity
    // Throughput: Mbps per edge. Energy: 0/1 routing indicator per edge.
    std::vector<std::vector<double>> flows;
    std::vector<double> ue_rate_mbps;       // delivered rate per commodity

    double objective = 0.0;
    double min_rate_mbps = 0.0;
    double p_total_w = 0.0;
    std::optional<double> gap;
    double runtime_s = 0.0;

    bool has_values() const noexcept { return status == SolveStatus::Optimal || status == SolveStatus::Feasible; }
    std::size_t activated_count() const noexcept;
};

/// Empty solution sized for a graph and commodity count (all zeros, nothing chosen).
NetworkSolution empty_solution(const MeasurementGraph& graph, std::size_t commodity_count, ProblemKind problem);

bool is_chosen(const NetworkSolution& sol, std::size_t edge_index) noexcept;

/// Rewrites a solution on a pruned graph into edge indexing of the original
/// graph; both graphs must share their node set.
NetworkSolution remap_solution(const NetworkSolution& sol, const MeasurementGraph& from, const MeasurementGraph& to);

/// JSON uses node ids, so files stay meaningful without the edge order.
nlohmann::json solution_to_json(const NetworkSolution& sol, const MeasurementGraph& graph,
                                std::span<const Commodity> commodities);
/// Throws ParseError when ids do not match the graph or commodity list.
NetworkSolution solution_from_json(const nlohmann::json& doc, const MeasurementGraph& graph,
                                   std::span<const Commodity> commodities);

}  // namespace iabopt
