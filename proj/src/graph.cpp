#include "iabopt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "iabopt/error.hpp"

namespace iabopt {

std::string_view to_string(NodeKind kind) noexcept {
    switch (kind) {
        case NodeKind::Ue: return "ue";
        case NodeKind::Frontend: return "frontend";
        case NodeKind::MtDu: return "mtdu";
        case NodeKind::DonorDu: return "donor";
    }
    return "?";
}

std::string_view to_string(EdgeKind kind) noexcept {
    return kind == EdgeKind::Wireless ? "wireless" : "wired";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept {
    if (text == "ue") return NodeKind::Ue;
    if (text == "frontend") return NodeKind::Frontend;
    if (text == "mtdu") return NodeKind::MtDu;
    if (text == "donor") return NodeKind::DonorDu;
    return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) noexcept {
    if (text == "wireless") return EdgeKind::Wireless;
    if (text == "wired") return EdgeKind::Wired;
    return std::nullopt;
}

std::string_view to_string(TreeViolationKind kind) noexcept {
    switch (kind) {
        case TreeViolationKind::InDegree: return "InDegree";
        case TreeViolationKind::Cycle: return "Cycle";
        case TreeViolationKind::Unreached: return "Unreached";
        case TreeViolationKind::UnknownEdge: return "UnknownEdge";
    }
    return "?";
}

double distance_2d(const Position& a, const Position& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double distance_3d(const Position& a, const Position& b) noexcept {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

std::optional<std::size_t> MeasurementGraph::find_node(NodeId id) const noexcept {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t MeasurementGraph::index_of(NodeId id) const {
    auto found = find_node(id);
    if (!found) throw Error(ErrorCode::InvalidArgument, "unknown node id " + std::to_string(id));
    return *found;
}

std::optional<std::size_t> MeasurementGraph::find_edge(NodeId src, NodeId dst) const noexcept {
    auto it = edge_index_.find({src, dst});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> MeasurementGraph::neighbors_all(std::size_t node_index) const {
    std::set<std::size_t> out;
    for (auto e : in_.at(node_index)) out.insert(index_.at(edges_[e].src));
    for (auto e : out_.at(node_index)) out.insert(index_.at(edges_[e].dst));
    return {out.begin(), out.end()};
}

std::optional<std::size_t> MeasurementGraph::frontend_ordinal(std::size_t node_index) const noexcept {
    if (node_index >= frontend_ordinal_.size() || frontend_ordinal_[node_index] < 0) return std::nullopt;
    return static_cast<std::size_t>(frontend_ordinal_[node_index]);
}

std::optional<std::size_t> MeasurementGraph::unit_head(int unit_id) const noexcept {
    auto it = unit_heads_.find(unit_id);
    if (it == unit_heads_.end()) return std::nullopt;
    return it->second;
}

namespace {

bool is_unit_head(NodeKind kind) { return kind == NodeKind::MtDu || kind == NodeKind::DonorDu; }

std::string edge_label(const Edge& e) {
    return std::to_string(e.src) + "->" + std::to_string(e.dst);
}

}  // namespace

MeasurementGraph build_graph(std::vector<Node> nodes, std::vector<Edge> edges) {
    MeasurementGraph g;
    g.nodes_ = std::move(nodes);
    g.edges_ = std::move(edges);

    std::size_t donors = 0;
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
        const Node& n = g.nodes_[i];
        if (!g.index_.emplace(n.id, i).second)
            throw Error(ErrorCode::DuplicateId, "node id " + std::to_string(n.id) + " appears twice");
        if (n.kind == NodeKind::DonorDu) {
            ++donors;
            g.donor_ = i;
        }
        if (is_unit_head(n.kind) && !g.unit_heads_.emplace(n.unit_id, i).second)
            throw Error(ErrorCode::DuplicateId, "unit id " + std::to_string(n.unit_id) + " has two MT+DU heads");
    }
    if (donors != 1)
        throw Error(ErrorCode::MissingDonor, "expected exactly one donor DU, found " + std::to_string(donors));

    std::unordered_map<int, int> frontends_per_unit;
    for (const Node& n : g.nodes_) {
        if (n.kind != NodeKind::Frontend) continue;
        if (!g.unit_heads_.contains(n.unit_id))
            throw Error(ErrorCode::OrphanFrontend,
                        "frontend " + std::to_string(n.id) + " references unknown unit " + std::to_string(n.unit_id));
        ++frontends_per_unit[n.unit_id];
    }
    for (const auto& [unit, head] : g.unit_heads_) {
        int count = frontends_per_unit.contains(unit) ? frontends_per_unit[unit] : 0;
        if (count < 1 || count > 3)
            throw Error(ErrorCode::OrphanFrontend, "unit " + std::to_string(unit) + " has " + std::to_string(count) +
                                                       " frontends (expected 1-3)");
    }

    g.in_.assign(g.nodes_.size(), {});
    g.out_.assign(g.nodes_.size(), {});
    for (std::size_t e = 0; e < g.edges_.size(); ++e) {
        const Edge& edge = g.edges_[e];
        auto s = g.find_node(edge.src);
        auto d = g.find_node(edge.dst);
        if (!s || !d) throw Error(ErrorCode::IllegalEdgeEndpoints, "edge " + edge_label(edge) + " has unknown endpoint");
        if (*s == *d) throw Error(ErrorCode::IllegalEdgeEndpoints, "self loop at " + std::to_string(edge.src));
        const Node& src = g.nodes_[*s];
        const Node& dst = g.nodes_[*d];
        if (edge.kind == EdgeKind::Wireless) {
            bool ok = src.kind == NodeKind::Frontend &&
                      (dst.kind == NodeKind::Ue || (dst.kind == NodeKind::MtDu && dst.unit_id != src.unit_id));
            if (!ok)
                throw Error(ErrorCode::IllegalEdgeEndpoints,
                            "wireless edge " + edge_label(edge) + " must go frontend->UE or frontend->foreign MT+DU");
            if (!std::isfinite(edge.pathloss_db) || edge.pathloss_db < 0.0)
                throw Error(ErrorCode::IllegalEdgeEndpoints, "wireless edge " + edge_label(edge) + " has invalid pathloss");
        } else {
            bool ok = is_unit_head(src.kind) && dst.kind == NodeKind::Frontend && dst.unit_id == src.unit_id;
            if (!ok)
                throw Error(ErrorCode::IllegalEdgeEndpoints,
                            "wired edge " + edge_label(edge) + " must go MT+DU->frontend of the same unit");
        }
        if (!g.edge_index_.emplace(std::pair{edge.src, edge.dst}, e).second)
            throw Error(ErrorCode::IllegalEdgeEndpoints, "duplicate edge " + edge_label(edge));
        g.out_[*s].push_back(e);
        g.in_[*d].push_back(e);
    }

    for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
        if (g.nodes_[i].kind == NodeKind::Frontend) g.frontends_.push_back(i);
        if (g.nodes_[i].kind == NodeKind::Ue) g.ues_.push_back(i);
    }
    auto by_id = [&](std::size_t a, std::size_t b) { return g.nodes_[a].id < g.nodes_[b].id; };
    std::sort(g.frontends_.begin(), g.frontends_.end(), by_id);
    std::sort(g.ues_.begin(), g.ues_.end(), by_id);
    g.frontend_ordinal_.assign(g.nodes_.size(), -1);
    for (std::size_t k = 0; k < g.frontends_.size(); ++k)
        g.frontend_ordinal_[g.frontends_[k]] = static_cast<std::ptrdiff_t>(k);

    for (auto u : g.ues_) {
        bool connected = std::any_of(g.in_[u].begin(), g.in_[u].end(),
                                     [&](std::size_t e) { return g.edges_[e].kind == EdgeKind::Wireless; });
        if (!connected)
            throw Error(ErrorCode::DisconnectedUe, "UE " + std::to_string(g.nodes_[u].id) + " has no incoming wireless edge");
    }
    return g;
}

MeasurementGraph subgraph(const MeasurementGraph& graph, std::span<const std::size_t> edge_indices) {
    std::vector<std::size_t> sorted(edge_indices.begin(), edge_indices.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Edge> edges;
    edges.reserve(sorted.size());
    for (auto e : sorted) edges.push_back(graph.edge_at(e));
    return build_graph({graph.nodes().begin(), graph.nodes().end()}, std::move(edges));
}

std::vector<Commodity> make_commodities(const MeasurementGraph& graph, double demand_mbps) {
    std::vector<Commodity> out;
    int next = 0;
    for (auto u : graph.ues()) out.push_back({next++, graph.donor_id(), graph.node_at(u).id, demand_mbps});
    return out;
}

bool structurally_equal(const MeasurementGraph& a, const MeasurementGraph& b, double db_tolerance) {
    if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size()) return false;
    if (!std::equal(a.nodes().begin(), a.nodes().end(), b.nodes().begin())) return false;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const Edge& x = a.edge_at(e);
        const Edge& y = b.edge_at(e);
        if (x.src != y.src || x.dst != y.dst || x.kind != y.kind || x.los != y.los) return false;
        if (std::abs(x.pathloss_db - y.pathloss_db) > db_tolerance) return false;
    }
    for (std::size_t v = 0; v < a.node_count(); ++v) {
        auto ai = a.in_edges(v), bi = b.in_edges(v), ao = a.out_edges(v), bo = b.out_edges(v);
        if (!std::equal(ai.begin(), ai.end(), bi.begin(), bi.end())) return false;
        if (!std::equal(ao.begin(), ao.end(), bo.begin(), bo.end())) return false;
    }
    return true;
}

TreeReport validate_tree(const MeasurementGraph& graph, std::span<const std::size_t> chosen_edges,
                         std::span<const Commodity> commodities) {
    TreeReport report;
    const std::size_t n = graph.node_count();
    std::vector<std::vector<std::size_t>> children(n);
    std::vector<int> indegree(n, 0);

    for (auto e : chosen_edges) {
        if (e >= graph.edge_count()) {
            report.violations.push_back({TreeViolationKind::UnknownEdge, 0, "edge index " + std::to_string(e)});
            continue;
        }
        const Edge& edge = graph.edge_at(e);
        auto s = graph.index_of(edge.src);
        auto d = graph.index_of(edge.dst);
        children[s].push_back(d);
        ++indegree[d];
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] > 1)
            report.violations.push_back({TreeViolationKind::InDegree, graph.node_at(v).id,
                                         "in-degree " + std::to_string(indegree[v])});
    }

    // Iterative three-colour DFS over the chosen subgraph.
    std::vector<int> colour(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (colour[root] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < children[v].size()) {
                std::size_t w = children[v][next++];
                if (colour[w] == 1) {
                    report.violations.push_back(
                        {TreeViolationKind::Cycle, graph.node_at(w).id, "cycle through node"});
                } else if (colour[w] == 0) {
                    colour[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                colour[v] = 2;
                stack.pop_back();
            }
        }
    }

    std::vector<bool> seen(n, false);
    std::queue<std::size_t> queue;
    queue.push(graph.donor_index());
    seen[graph.donor_index()] = true;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop();
        report.reached.push_back(v);
        for (auto w : children[v]) {
            if (!seen[w]) {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    for (const auto& k : commodities) {
        auto d = graph.find_node(k.dest);
        if (!d || !seen[*d])
            report.violations.push_back({TreeViolationKind::Unreached, k.dest, "commodity " + std::to_string(k.id)});
    }
    report.ok = report.violations.empty();
    return report;
}

}  // namespace iabopt
