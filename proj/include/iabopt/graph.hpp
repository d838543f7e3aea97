#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace iabopt {

using NodeId = std::int64_t;

enum class NodeKind { Ue, Frontend, MtDu, DonorDu };
enum class EdgeKind { Wireless, Wired };

std::string_view to_string(NodeKind kind) noexcept;
std::string_view to_string(EdgeKind kind) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept;
std::optional<EdgeKind> parse_edge_kind(std::string_view text) noexcept;

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Position&) const = default;
};

double distance_2d(const Position& a, const Position& b) noexcept;
double distance_3d(const Position& a, const Position& b) noexcept;

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::Ue;
    Position pos;
    int unit_id = -1;                 // groups an MtDu/DonorDu with its frontends
    bool indoor = false;              // UEs only
    double sector_azimuth_deg = 0.0;  // frontends only, counter-clockwise from +x

    bool operator==(const Node&) const = default;
};

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    EdgeKind kind = EdgeKind::Wireless;
    double pathloss_db = 0.0;  // positive attenuation, wireless only
    bool los = false;

    bool operator==(const Edge&) const = default;
};

/// Downlink routing requirement from the donor DU to one UE.
struct Commodity {
    int id = 0;
    NodeId source = 0;
    NodeId dest = 0;
    double demand_mbps = 0.0;
};

/// Immutable measurement graph. Node and edge indices are positions in
/// nodes()/edges(); indices of nodes are stable across pruned copies.
class MeasurementGraph {
public:
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Node& node_at(std::size_t index) const { return nodes_.at(index); }
    const Edge& edge_at(std::size_t index) const { return edges_.at(index); }

    std::optional<std::size_t> find_node(NodeId id) const noexcept;
    std::size_t index_of(NodeId id) const;  // throws InvalidArgument
    const Node& node(NodeId id) const { return nodes_[index_of(id)]; }
    std::optional<std::size_t> find_edge(NodeId src, NodeId dst) const noexcept;

    std::span<const std::size_t> in_edges(std::size_t node_index) const { return in_.at(node_index); }
    std::span<const std::size_t> out_edges(std::size_t node_index) const { return out_.at(node_index); }
    /// N_all(v): distinct neighbour node indices over incoming and outgoing edges.
    std::vector<std::size_t> neighbors_all(std::size_t node_index) const;
    std::size_t in_degree(std::size_t node_index) const { return in_.at(node_index).size(); }
    std::size_t out_degree(std::size_t node_index) const { return out_.at(node_index).size(); }
    std::size_t degree(std::size_t node_index) const { return in_degree(node_index) + out_degree(node_index); }

    std::size_t donor_index() const noexcept { return donor_; }
    NodeId donor_id() const noexcept { return nodes_[donor_].id; }

    /// Frontends in ascending id order; the position in this list is the
    /// frontend ordinal used by every power vector in the library.
    std::span<const std::size_t> frontends() const noexcept { return frontends_; }
    std::span<const std::size_t> ues() const noexcept { return ues_; }
    std::optional<std::size_t> frontend_ordinal(std::size_t node_index) const noexcept;
    /// Index of the MtDu/DonorDu owning the given unit id.
    std::optional<std::size_t> unit_head(int unit_id) const noexcept;

    bool operator==(const MeasurementGraph& other) const {
        return nodes_ == other.nodes_ && edges_ == other.edges_;
    }

private:
    friend MeasurementGraph build_graph(std::vector<Node> nodes, std::vector<Edge> edges);

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::map<std::pair<NodeId, NodeId>, std::size_t> edge_index_;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> frontends_;
    std::vector<std::size_t> ues_;
    std::vector<std::ptrdiff_t> frontend_ordinal_;
    std::unordered_map<int, std::size_t> unit_heads_;
    std::size_t donor_ = 0;
};

/// Validates every structural invariant and builds adjacency indices.
/// Throws Error with DuplicateId, IllegalEdgeEndpoints, MissingDonor,
/// OrphanFrontend or DisconnectedUe.
MeasurementGraph build_graph(std::vector<Node> nodes, std::vector<Edge> edges);

/// Subgraph with the same nodes and the selected edges (by index).
MeasurementGraph subgraph(const MeasurementGraph& graph, std::span<const std::size_t> edge_indices);

/// One commodity per UE, donor -> UE, in ascending UE id order.
std::vector<Commodity> make_commodities(const MeasurementGraph& graph, double demand_mbps);

/// Equality with pathloss compared at the given absolute tolerance.
bool structurally_equal(const MeasurementGraph& a, const MeasurementGraph& b, double db_tolerance = 5e-7);

enum class TreeViolationKind { InDegree, Cycle, Unreached, UnknownEdge };
std::string_view to_string(TreeViolationKind kind) noexcept;

struct TreeViolation {
    TreeViolationKind kind;
    NodeId node = 0;
    std::string detail;
};

struct TreeReport {
    bool ok = true;
    std::vector<TreeViolation> violations;
    std::vector<std::size_t> reached;  // node indices reachable from the donor
};

/// Checks that chosen edges form a donor-rooted tree covering the
/// destinations of the given commodities.
TreeReport validate_tree(const MeasurementGraph& graph, std::span<const std::size_t> chosen_edges,
                         std::span<const Commodity> commodities);

}  // namespace iabopt
