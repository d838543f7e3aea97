#include "fixtures.hpp"

#include <cmath>

namespace iabopt::testing {

CapacityTable step_table(std::vector<std::pair<double, double>> steps) {
    CapacityTable t;
    int i = 0;
    for (auto [th, c] : steps) t.entries.push_back({i++, th, c});
    validate(t);
    return t;
}

double pathloss_for_sinr(double sinr_db, double p_mw, double g_tx_dbi, double g_rx_dbi, double noise_mw) {
    return g_tx_dbi + g_rx_dbi + 10.0 * std::log10(p_mw / noise_mw) - sinr_db;
}

namespace {

Node head(NodeId id, NodeKind kind, int unit, double x) { return {id, kind, {x, 0.0, 10.0}, unit, false, 0.0}; }
Node frontend(NodeId id, int unit, double x, double azimuth) {
    return {id, NodeKind::Frontend, {x, 0.0, 10.0}, unit, false, azimuth};
}
Node ue(NodeId id, double x) { return {id, NodeKind::Ue, {x, 0.0, 1.5}, -1, false, 0.0}; }

ProblemInstance finish(std::vector<Node> nodes, std::vector<Edge> edges, CapacityTable table, double demand,
                       const RadioParams& radio = {}) {
    MeasurementGraph g = build_graph(std::move(nodes), std::move(edges));
    auto commodities = make_commodities(g, demand);
    ProblemInstance inst = make_instance(std::move(g), std::move(commodities), radio, std::move(table),
                                         PowerModelParams{});
    inst.noise_mw = kNoiseMw;
    return inst;
}

}  // namespace

ProblemInstance star_instance(const std::vector<double>& ue_sinr_db, CapacityTable table, double demand_mbps) {
    const RadioParams radio;
    std::vector<Node> nodes{head(1, NodeKind::DonorDu, 0, 0.0), frontend(2, 0, 0.0, 0.0)};
    std::vector<Edge> edges{{1, 2, EdgeKind::Wired, 0.0, false}};
    for (std::size_t i = 0; i < ue_sinr_db.size(); ++i) {
        const NodeId id = 100 + static_cast<NodeId>(i);
        nodes.push_back(ue(id, 100.0 + 10.0 * static_cast<double>(i)));
        const double pl =
            pathloss_for_sinr(ue_sinr_db[i], radio.p_max_mw, radio.g_tx_main_dbi, radio.g_rx_main_dbi, kNoiseMw);
        edges.push_back({2, id, EdgeKind::Wireless, pl, true});
    }
    return finish(std::move(nodes), std::move(edges), std::move(table), demand_mbps);
}

ProblemInstance chain_instance(double sinr_db, CapacityTable table, double demand_mbps) {
    const RadioParams radio;
    std::vector<Node> nodes{head(1, NodeKind::DonorDu, 0, 0.0), frontend(2, 0, 0.0, 0.0),
                            head(10, NodeKind::MtDu, 1, 200.0), frontend(11, 1, 200.0, 0.0), ue(100, 400.0)};
    const double pl_bh =
        pathloss_for_sinr(sinr_db, radio.p_max_mw, radio.g_tx_main_dbi, radio.g_bh_rx_main_dbi, kNoiseMw);
    const double pl_ue = pathloss_for_sinr(sinr_db, radio.p_max_mw, radio.g_tx_main_dbi, radio.g_rx_main_dbi, kNoiseMw);
    std::vector<Edge> edges{{1, 2, EdgeKind::Wired, 0.0, false},
                            {10, 11, EdgeKind::Wired, 0.0, false},
                            {2, 10, EdgeKind::Wireless, pl_bh, true},
                            {11, 100, EdgeKind::Wireless, pl_ue, true}};
    return finish(std::move(nodes), std::move(edges), std::move(table), demand_mbps);
}

ProblemInstance interfering_pair(double serving_sinr_db, double cross_db, CapacityTable table, double demand_mbps) {
    RadioParams radio;
    radio.g_rx_side_dbi = radio.g_rx_main_dbi;
    std::vector<Node> nodes{head(1, NodeKind::DonorDu, 0, 0.0), frontend(2, 0, 0.0, 0.0),
                            head(10, NodeKind::MtDu, 1, 300.0), frontend(11, 1, 300.0, 180.0),
                            ue(100, 100.0),                       ue(101, 200.0)};
    const double pl_ue =
        pathloss_for_sinr(serving_sinr_db, radio.p_max_mw, radio.g_tx_main_dbi, radio.g_rx_main_dbi, kNoiseMw);
    const double pl_cross = pl_ue + cross_db;
    const double pl_bh = pathloss_for_sinr(60.0, radio.p_max_mw, radio.g_tx_main_dbi, radio.g_bh_rx_main_dbi, kNoiseMw);
    std::vector<Edge> edges{{1, 2, EdgeKind::Wired, 0.0, false},        {10, 11, EdgeKind::Wired, 0.0, false},
                            {2, 10, EdgeKind::Wireless, pl_bh, true},     {2, 100, EdgeKind::Wireless, pl_ue, true},
                            {11, 101, EdgeKind::Wireless, pl_ue, true},   {2, 101, EdgeKind::Wireless, pl_cross, false},
                            {11, 100, EdgeKind::Wireless, pl_cross, false}};
    return finish(std::move(nodes), std::move(edges), std::move(table), demand_mbps, radio);
}

}  // namespace iabopt::testing
