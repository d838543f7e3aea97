#include "iabopt/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "iabopt/error.hpp"

namespace iabopt {

using nlohmann::json;

double round_db(double value) noexcept { return std::round(value * 1e6) / 1e6; }

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(std::string_view text, std::string_view what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
        throw Error(ErrorCode::ParseError, std::string(what) + " line " + std::to_string(line) + ": " + e.what());
    }
}

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorCode::ParseError, where + ": expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) throw Error(ErrorCode::ParseError, where + ": missing field '" + name + "'");
    return *it;
}

template <class T>
T typed(const json& value, const std::string& where, const char* name) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::ParseError, where + ": field '" + name + "' has the wrong type");
    }
}

template <class T>
T optional_field(const json& obj, const char* name, T fallback, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) return fallback;
    return typed<T>(*it, where, name);
}

}  // namespace

json graph_to_json(const MeasurementGraph& graph) {
    json nodes = json::array();
    for (const Node& n : graph.nodes()) {
        nodes.push_back({{"id", n.id},
                         {"kind", to_string(n.kind)},
                         {"unit_id", n.unit_id},
                         {"pos", {n.pos.x, n.pos.y, n.pos.z}},
                         {"indoor", n.indoor},
                         {"sector_azimuth_deg", n.sector_azimuth_deg}});
    }
    json edges = json::array();
    for (const Edge& e : graph.edges()) {
        edges.push_back({{"src", e.src},
                         {"dst", e.dst},
                         {"kind", to_string(e.kind)},
                         {"pathloss_db", round_db(e.pathloss_db)},
                         {"los", e.los}});
    }
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

MeasurementGraph graph_from_json(const json& doc) {
    const json& nodes_json = field(doc, "nodes", "graph");
    const json& edges_json = field(doc, "edges", "graph");
    if (!nodes_json.is_array() || !edges_json.is_array())
        throw Error(ErrorCode::ParseError, "graph: 'nodes' and 'edges' must be arrays");

    std::vector<Node> nodes;
    for (std::size_t i = 0; i < nodes_json.size(); ++i) {
        const json& nj = nodes_json[i];
        const std::string where = "nodes[" + std::to_string(i) + "]";
        Node n;
        n.id = typed<NodeId>(field(nj, "id", where), where, "id");
        auto kind_text = typed<std::string>(field(nj, "kind", where), where, "kind");
        auto kind = parse_node_kind(kind_text);
        if (!kind) throw Error(ErrorCode::ParseError, where + ": unknown kind '" + kind_text + "'");
        n.kind = *kind;
        n.unit_id = optional_field<int>(nj, "unit_id", -1, where);
        auto pos = optional_field<std::vector<double>>(nj, "pos", {0.0, 0.0, 0.0}, where);
        if (pos.size() != 3) throw Error(ErrorCode::ParseError, where + ": 'pos' must have 3 coordinates");
        n.pos = {pos[0], pos[1], pos[2]};
        n.indoor = optional_field<bool>(nj, "indoor", false, where);
        n.sector_azimuth_deg = optional_field<double>(nj, "sector_azimuth_deg", 0.0, where);
        nodes.push_back(n);
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const json& ej = edges_json[i];
        const std::string where = "edges[" + std::to_string(i) + "]";
        Edge e;
        e.src = typed<NodeId>(field(ej, "src", where), where, "src");
        e.dst = typed<NodeId>(field(ej, "dst", where), where, "dst");
        auto kind_text = typed<std::string>(field(ej, "kind", where), where, "kind");
        auto kind = parse_edge_kind(kind_text);
        if (!kind) throw Error(ErrorCode::ParseError, where + ": unknown kind '" + kind_text + "'");
        e.kind = *kind;
        e.pathloss_db = optional_field<double>(ej, "pathloss_db", 0.0, where);
        e.los = optional_field<bool>(ej, "los", false, where);
        if (e.kind == EdgeKind::Wireless && !ej.contains("pathloss_db"))
            throw Error(ErrorCode::ParseError, where + ": wireless edge needs 'pathloss_db'");
        edges.push_back(e);
    }
    return build_graph(std::move(nodes), std::move(edges));
}

std::string dump_graph(const MeasurementGraph& graph) { return graph_to_json(graph).dump(1) + "\n"; }

MeasurementGraph parse_graph(std::string_view text) { return graph_from_json(parse_json_text(text, "graph")); }

MeasurementGraph load_graph(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

void save_graph(const MeasurementGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << dump_graph(graph);
}

}  // namespace iabopt
