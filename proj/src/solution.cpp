#include "iabopt/solution.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "iabopt/error.hpp"

namespace iabopt {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 2> kProblemNames{"throughput", "energy"};
constexpr std::array<std::string_view, 5> kStatusNames{"optimal", "feasible", "infeasible", "time_limit", "error"};

std::size_t edge_by_ids(const MeasurementGraph& graph, const json& item, const std::string& where) {
    if (!item.contains("src") || !item.contains("dst"))
        throw Error(ErrorCode::ParseError, where + ": missing 'src'/'dst'");
    auto e = graph.find_edge(item["src"].get<NodeId>(), item["dst"].get<NodeId>());
    if (!e)
        throw Error(ErrorCode::ParseError, where + ": edge " + item["src"].dump() + "->" + item["dst"].dump() +
                                               " is not in the graph");
    return *e;
}

}  // namespace

std::string_view to_string(ProblemKind kind) noexcept { return kProblemNames[static_cast<int>(kind)]; }
std::string_view to_string(SolveStatus status) noexcept { return kStatusNames[static_cast<int>(status)]; }

std::optional<ProblemKind> parse_problem_kind(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kProblemNames.size(); ++i)
        if (kProblemNames[i] == text) return static_cast<ProblemKind>(i);
    return std::nullopt;
}

std::optional<SolveStatus> parse_solve_status(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kStatusNames.size(); ++i)
        if (kStatusNames[i] == text) return static_cast<SolveStatus>(i);
    return std::nullopt;
}

std::size_t NetworkSolution::activated_count() const noexcept {
    return static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
}

NetworkSolution empty_solution(const MeasurementGraph& graph, std::size_t commodity_count, ProblemKind problem) {
    NetworkSolution s;
    s.problem = problem;
    s.power_mw.assign(graph.frontends().size(), 0.0);
    s.active.assign(graph.frontends().size(), 0);
    s.airtime.assign(graph.edge_count(), 0.0);
    s.mcs_level.assign(graph.edge_count(), -1);
    s.link_rate_mbps.assign(graph.edge_count(), 0.0);
    s.flows.assign(commodity_count, std::vector<double>(graph.edge_count(), 0.0));
    s.ue_rate_mbps.assign(commodity_count, 0.0);
    return s;
}

bool is_chosen(const NetworkSolution& sol, std::size_t edge_index) noexcept {
    return std::binary_search(sol.chosen_edges.begin(), sol.chosen_edges.end(), edge_index);
}

NetworkSolution remap_solution(const NetworkSolution& sol, const MeasurementGraph& from, const MeasurementGraph& to) {
    if (from.node_count() != to.node_count())
        throw Error(ErrorCode::InvalidArgument, "remap_solution: graphs have different node sets");
    NetworkSolution out = empty_solution(to, sol.flows.size(), sol.problem);
    out.status = sol.status;
    out.power_mw = sol.power_mw;
    out.active = sol.active;
    out.ue_rate_mbps = sol.ue_rate_mbps;
    out.objective = sol.objective;
    out.min_rate_mbps = sol.min_rate_mbps;
    out.p_total_w = sol.p_total_w;
    out.gap = sol.gap;
    out.runtime_s = sol.runtime_s;
    std::vector<std::size_t> mapped(from.edge_count());
    for (std::size_t e = 0; e < from.edge_count(); ++e) {
        const Edge& edge = from.edge_at(e);
        auto target = to.find_edge(edge.src, edge.dst);
        if (!target) throw Error(ErrorCode::InvalidArgument, "remap_solution: edge missing in target graph");
        mapped[e] = *target;
        out.airtime[*target] = sol.airtime[e];
        out.mcs_level[*target] = sol.mcs_level[e];
        out.link_rate_mbps[*target] = sol.link_rate_mbps[e];
        for (std::size_t k = 0; k < sol.flows.size(); ++k) out.flows[k][*target] = sol.flows[k][e];
    }
    for (auto e : sol.chosen_edges) out.chosen_edges.push_back(mapped[e]);
    std::sort(out.chosen_edges.begin(), out.chosen_edges.end());
    return out;
}

json solution_to_json(const NetworkSolution& sol, const MeasurementGraph& graph, std::span<const Commodity> commodities) {
    json frontends = json::array();
    for (std::size_t f = 0; f < sol.power_mw.size(); ++f) {
        frontends.push_back({{"id", graph.node_at(graph.frontends()[f]).id},
                             {"power_mw", sol.power_mw[f]},
                             {"active", sol.active[f] != 0}});
    }
    json edges = json::array();
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const bool chosen = is_chosen(sol, e);
        if (!chosen && sol.airtime[e] == 0.0) continue;
        const Edge& edge = graph.edge_at(e);
        edges.push_back({{"src", edge.src},
                         {"dst", edge.dst},
                         {"chosen", chosen},
                         {"airtime", sol.airtime[e]},
                         {"mcs_level", sol.mcs_level[e]},
                         {"rate_mbps", sol.link_rate_mbps[e]}});
    }
    json flows = json::array();
    for (std::size_t k = 0; k < sol.flows.size(); ++k) {
        json items = json::array();
        for (std::size_t e = 0; e < graph.edge_count(); ++e) {
            if (sol.flows[k][e] == 0.0) continue;
            const Edge& edge = graph.edge_at(e);
            items.push_back({{"src", edge.src}, {"dst", edge.dst}, {"flow", sol.flows[k][e]}});
        }
        flows.push_back({{"commodity", commodities[k].id},
                         {"ue", commodities[k].dest},
                         {"rate_mbps", sol.ue_rate_mbps[k]},
                         {"edges", std::move(items)}});
    }
    json doc = {{"problem", to_string(sol.problem)},
                {"status", to_string(sol.status)},
                {"objective", sol.objective},
                {"min_rate_mbps", sol.min_rate_mbps},
                {"p_total_w", sol.p_total_w},
                {"runtime_s", sol.runtime_s},
                {"frontends", std::move(frontends)},
                {"edges", std::move(edges)},
                {"flows", std::move(flows)}};
    doc["gap"] = sol.gap ? json(*sol.gap) : json(nullptr);
    return doc;
}

NetworkSolution solution_from_json(const json& doc, const MeasurementGraph& graph,
                                   std::span<const Commodity> commodities) {
    try {
        auto problem = parse_problem_kind(doc.at("problem").get<std::string>());
        auto status = parse_solve_status(doc.at("status").get<std::string>());
        if (!problem || !status) throw Error(ErrorCode::ParseError, "solution: unknown problem or status");
        NetworkSolution sol = empty_solution(graph, commodities.size(), *problem);
        sol.status = *status;
        sol.objective = doc.at("objective").get<double>();
        sol.min_rate_mbps = doc.value("min_rate_mbps", 0.0);
        sol.p_total_w = doc.value("p_total_w", 0.0);
        sol.runtime_s = doc.value("runtime_s", 0.0);
        if (doc.contains("gap") && !doc["gap"].is_null()) sol.gap = doc["gap"].get<double>();

        const json& frontends = doc.at("frontends");
        if (frontends.size() != graph.frontends().size())
            throw Error(ErrorCode::ParseError, "solution: frontend count differs from the graph");
        for (std::size_t i = 0; i < frontends.size(); ++i) {
            const NodeId id = frontends[i].at("id").get<NodeId>();
            auto node = graph.find_node(id);
            auto ordinal = node ? graph.frontend_ordinal(*node) : std::nullopt;
            if (!ordinal) throw Error(ErrorCode::ParseError, "solution: frontend id " + std::to_string(id) + " unknown");
            sol.power_mw[*ordinal] = frontends[i].at("power_mw").get<double>();
            sol.active[*ordinal] = frontends[i].at("active").get<bool>() ? 1 : 0;
        }
        const json& edges = doc.at("edges");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::size_t e = edge_by_ids(graph, edges[i], "solution.edges[" + std::to_string(i) + "]");
            if (edges[i].value("chosen", false)) sol.chosen_edges.push_back(e);
            sol.airtime[e] = edges[i].value("airtime", 0.0);
            sol.mcs_level[e] = edges[i].value("mcs_level", -1);
            sol.link_rate_mbps[e] = edges[i].value("rate_mbps", 0.0);
        }
        std::sort(sol.chosen_edges.begin(), sol.chosen_edges.end());
        const json& flows = doc.at("flows");
        if (flows.size() != commodities.size())
            throw Error(ErrorCode::ParseError, "solution: commodity count differs");
        for (std::size_t k = 0; k < flows.size(); ++k) {
            if (flows[k].at("ue").get<NodeId>() != commodities[k].dest)
                throw Error(ErrorCode::ParseError, "solution: commodity " + std::to_string(k) + " targets another UE");
            sol.ue_rate_mbps[k] = flows[k].value("rate_mbps", 0.0);
            const json& items = flows[k].at("edges");
            for (std::size_t i = 0; i < items.size(); ++i) {
                const std::size_t e = edge_by_ids(graph, items[i], "solution.flows[" + std::to_string(k) + "]");
                sol.flows[k][e] = items[i].at("flow").get<double>();
            }
        }
        return sol;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("solution: ") + e.what());
    }
}

}  // namespace iabopt
