#include <doctest.h>

#include <filesystem>
#include <random>

#include "iabopt/error.hpp"
#include "iabopt/graph.hpp"
#include "iabopt/graph_io.hpp"
#include "iabopt/scenario.hpp"

using namespace iabopt;

namespace {

std::vector<Node> minimal_nodes() {
    return {{1, NodeKind::DonorDu, {0, 0, 10}, 0, false, 0.0},
            {2, NodeKind::Frontend, {0, 0, 10}, 0, false, 0.0},
            {3, NodeKind::Ue, {50, 0, 1.5}, -1, true, 0.0}};
}

std::vector<Edge> minimal_edges() {
    return {{1, 2, EdgeKind::Wired, 0.0, false}, {2, 3, EdgeKind::Wireless, 91.25, true}};
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an iabopt::Error");
    return ErrorCode::InvalidArgument;
}

// Two units; unit 1 is a relay with one frontend.
MeasurementGraph two_units() {
    std::vector<Node> nodes = minimal_nodes();
    nodes.push_back({10, NodeKind::MtDu, {100, 0, 10}, 1, false, 0.0});
    nodes.push_back({11, NodeKind::Frontend, {100, 0, 10}, 1, false, 180.0});
    std::vector<Edge> edges = minimal_edges();
    edges.push_back({10, 11, EdgeKind::Wired, 0.0, false});
    edges.push_back({2, 10, EdgeKind::Wireless, 80.0, true});
    edges.push_back({11, 3, EdgeKind::Wireless, 95.0, false});
    return build_graph(nodes, edges);
}

}  // namespace

TEST_CASE("minimal legal topology builds") {
    MeasurementGraph g = build_graph(minimal_nodes(), minimal_edges());
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.donor_id() == 1);
    REQUIRE(g.frontends().size() == 1);
    CHECK(g.frontend_ordinal(g.index_of(2)) == 0u);
    CHECK(g.ues().size() == 1);
    CHECK(g.in_degree(g.index_of(3)) == 1);
    CHECK(g.neighbors_all(g.index_of(2)).size() == 2);
}

TEST_CASE("structural errors") {
    SUBCASE("UE -> frontend") {
        auto edges = minimal_edges();
        edges.push_back({3, 2, EdgeKind::Wireless, 90.0, false});
        CHECK(code_of([&] { build_graph(minimal_nodes(), edges); }) == ErrorCode::IllegalEdgeEndpoints);
    }
    SUBCASE("duplicate id") {
        auto nodes = minimal_nodes();
        nodes[2].id = 7;
        nodes.push_back({7, NodeKind::Ue, {10, 0, 1.5}, -1, false, 0.0});
        auto edges = minimal_edges();
        edges[1].dst = 7;
        CHECK(code_of([&] { build_graph(nodes, edges); }) == ErrorCode::DuplicateId);
    }
    SUBCASE("no donor") {
        auto nodes = minimal_nodes();
        nodes[0].kind = NodeKind::MtDu;
        CHECK(code_of([&] { build_graph(nodes, minimal_edges()); }) == ErrorCode::MissingDonor);
    }
    SUBCASE("frontend of unknown unit") {
        auto nodes = minimal_nodes();
        nodes[1].unit_id = 4;
        CHECK(code_of([&] { build_graph(nodes, {}); }) == ErrorCode::OrphanFrontend);
    }
    SUBCASE("UE without incoming wireless edge") {
        auto edges = minimal_edges();
        edges.pop_back();
        CHECK(code_of([&] { build_graph(minimal_nodes(), edges); }) == ErrorCode::DisconnectedUe);
    }
    SUBCASE("wired edge across units") {
        MeasurementGraph g = two_units();
        std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
        std::vector<Edge> edges(g.edges().begin(), g.edges().end());
        edges.push_back({1, 11, EdgeKind::Wired, 0.0, false});
        CHECK(code_of([&] { build_graph(nodes, edges); }) == ErrorCode::IllegalEdgeEndpoints);
    }
}

TEST_CASE("json round trip of the minimal graph") {
    MeasurementGraph g = build_graph(minimal_nodes(), minimal_edges());
    const auto path = std::filesystem::temp_directory_path() / "iabopt_graph_roundtrip.json";
    save_graph(g, path);
    MeasurementGraph back = load_graph(path);
    CHECK(back == g);
    std::filesystem::remove(path);
}

TEST_CASE("json errors carry context") {
    const std::string missing_kind = R"({"nodes":[{"id":1}],"edges":[]})";
    try {
        parse_graph(missing_kind);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("kind") != std::string::npos);
    }
    try {
        parse_graph("{\n\"nodes\": [\n,]}");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("randomized 3-unit graphs keep their adjacency through json") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioConfig c;
        c.seed = seed;
        c.unit_positions = {{10, 20}, {150, 80}, {260, 210}};
        ScenarioRng rng(seed, 7);
        for (int i = 0; i < 10; ++i) c.ue_positions.push_back({rng.uniform(0, 300), rng.uniform(0, 300), false});
        Scenario s = generate_at_load(c, 1.0, 0);
        REQUIRE(s.graph.frontends().size() == 9);
        REQUIRE(s.graph.ues().size() == 10);
        MeasurementGraph back = parse_graph(dump_graph(s.graph));
        CHECK(structurally_equal(back, s.graph));
        // Second round trip is bit-identical.
        CHECK(dump_graph(back) == dump_graph(s.graph));
    }
}

TEST_CASE("validate_tree") {
    MeasurementGraph g = two_units();
    auto commodities = make_commodities(g, 0.0);
    auto idx = [&](NodeId s, NodeId d) { return *g.find_edge(s, d); };

    SUBCASE("donor -> frontend -> UE") {
        std::vector<std::size_t> t{idx(1, 2), idx(2, 3)};
        TreeReport r = validate_tree(g, t, commodities);
        CHECK(r.ok);
        CHECK(r.reached.size() == 3);
    }
    SUBCASE("UE with two parents") {
        std::vector<std::size_t> t{idx(1, 2), idx(2, 3), idx(2, 10), idx(10, 11), idx(11, 3)};
        TreeReport r = validate_tree(g, t, commodities);
        CHECK_FALSE(r.ok);
        REQUIRE(!r.violations.empty());
        CHECK(r.violations[0].kind == TreeViolationKind::InDegree);
        CHECK(r.violations[0].node == 3);
    }
    SUBCASE("unreached UE") {
        std::vector<std::size_t> t{idx(1, 2)};
        TreeReport r = validate_tree(g, t, commodities);
        CHECK_FALSE(r.ok);
        CHECK(r.violations[0].kind == TreeViolationKind::Unreached);
    }
}

TEST_CASE("validate_tree detects a cycle between two relays") {
    std::vector<Node> nodes = minimal_nodes();
    nodes.push_back({10, NodeKind::MtDu, {100, 0, 10}, 1, false, 0.0});
    nodes.push_back({11, NodeKind::Frontend, {100, 0, 10}, 1, false, 0.0});
    nodes.push_back({20, NodeKind::MtDu, {200, 0, 10}, 2, false, 0.0});
    nodes.push_back({21, NodeKind::Frontend, {200, 0, 10}, 2, false, 180.0});
    std::vector<Edge> edges = minimal_edges();
    edges.push_back({10, 11, EdgeKind::Wired, 0.0, false});
    edges.push_back({20, 21, EdgeKind::Wired, 0.0, false});
    edges.push_back({11, 20, EdgeKind::Wireless, 80.0, true});
    edges.push_back({21, 10, EdgeKind::Wireless, 80.0, true});
    MeasurementGraph g = build_graph(nodes, edges);
    std::vector<std::size_t> t{*g.find_edge(1, 2), *g.find_edge(2, 3), *g.find_edge(10, 11),
                               *g.find_edge(11, 20), *g.find_edge(20, 21), *g.find_edge(21, 10)};
    TreeReport r = validate_tree(g, t, make_commodities(g, 0.0));
    CHECK_FALSE(r.ok);
    bool cycle = false;
    for (const auto& v : r.violations) cycle = cycle || v.kind == TreeViolationKind::Cycle;
    CHECK(cycle);
}

TEST_CASE("property: accepted random soups respect the endpoint rules") {
    std::mt19937_64 rng(42);
    int accepted = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Node> nodes;
        const int units = 1 + static_cast<int>(rng() % 3);
        NodeId id = 1;
        for (int u = 0; u < units; ++u) {
            nodes.push_back({id++, u == 0 ? NodeKind::DonorDu : NodeKind::MtDu, {u * 50.0, 0, 10}, u, false, 0.0});
            nodes.push_back({id++, NodeKind::Frontend, {u * 50.0, 0, 10}, u, false, 0.0});
        }
        const int ues = static_cast<int>(rng() % 3);
        for (int i = 0; i < ues; ++i) nodes.push_back({id++, NodeKind::Ue, {10.0 * i, 5, 1.5}, -1, false, 0.0});
        std::vector<Edge> edges;
        const int m = static_cast<int>(rng() % 8);
        for (int k = 0; k < m; ++k) {
            const auto& s = nodes[rng() % nodes.size()];
            const auto& d = nodes[rng() % nodes.size()];
            edges.push_back({s.id, d.id, rng() % 2 ? EdgeKind::Wireless : EdgeKind::Wired, 90.0, false});
        }
        MeasurementGraph g;
        try {
            g = build_graph(nodes, edges);
        } catch (const Error&) {
            continue;
        }
        ++accepted;
        for (const Edge& e : g.edges()) {
            const Node& s = g.node(e.src);
            const Node& d = g.node(e.dst);
            if (e.kind == EdgeKind::Wireless) {
                CHECK(s.kind == NodeKind::Frontend);
                const bool ok = d.kind == NodeKind::Ue || (d.kind == NodeKind::MtDu && d.unit_id != s.unit_id);
                CHECK(ok);
            } else {
                CHECK((s.kind == NodeKind::MtDu || s.kind == NodeKind::DonorDu));
                CHECK(d.kind == NodeKind::Frontend);
                CHECK(d.unit_id == s.unit_id);
            }
        }
        // Tree property on a random chosen subset.
        std::vector<std::size_t> chosen;
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            if (rng() % 2) chosen.push_back(e);
        TreeReport r = validate_tree(g, chosen, {});
        if (r.ok) {
            std::size_t inside = 0;
            std::vector<bool> reached(g.node_count(), false);
            for (auto v : r.reached) reached[v] = true;
            for (auto e : chosen)
                if (reached[g.index_of(g.edge_at(e).src)]) ++inside;
            CHECK(inside == r.reached.size() - 1);
        }
    }
    CHECK(accepted > 50);
}
