#include "iabopt/instance.hpp"

#include <algorithm>
#include <cmath>

#include "iabopt/error.hpp"

namespace iabopt {

using nlohmann::json;

DiscretePower power_grid(double p_max_mw, int levels) {
    if (levels < 2) throw Error(ErrorCode::InvalidArgument, "a power grid needs at least 2 levels");
    DiscretePower grid;
    for (int l = 0; l < levels; ++l) grid.levels_mw.push_back(p_max_mw * l / (levels - 1));
    grid.levels_mw.back() = p_max_mw;
    return grid;
}

ProblemInstance make_instance(MeasurementGraph graph, std::vector<Commodity> commodities, const RadioParams& radio,
                              CapacityTable table, const PowerModelParams& power_model) {
    ProblemInstance inst;
    inst.gains = std::make_shared<const GainMatrix>(graph, radio);
    inst.graph = std::move(graph);
    inst.commodities = std::move(commodities);
    inst.radio = radio;
    inst.table = std::move(table);
    inst.power_model = power_model;
    inst.power.assign(inst.graph.frontends().size(), FixedPower{radio.p_max_mw});
    return inst;
}

ProblemInstance with_graph(const ProblemInstance& base, MeasurementGraph graph) {
    if (graph.node_count() != base.graph.node_count())
        throw Error(ErrorCode::InvalidArgument, "with_graph: node sets differ");
    ProblemInstance inst = base;
    inst.graph = std::move(graph);
    return inst;
}

bool power_allowed(const PowerPlan& plan, double p_mw, double p_max_mw, double tol) {
    const double slack = tol * std::max(1.0, p_max_mw);
    if (const auto* f = std::get_if<FixedPower>(&plan)) return std::abs(p_mw - f->mw) <= slack;
    if (std::holds_alternative<ContinuousPower>(plan)) return p_mw >= -slack && p_mw <= p_max_mw + slack;
    const auto& levels = std::get<DiscretePower>(plan).levels_mw;
    return std::any_of(levels.begin(), levels.end(), [&](double l) { return std::abs(l - p_mw) <= slack; });
}

void validate(const ProblemInstance& inst) {
    validate(inst.radio);
    validate(inst.table);
    validate(inst.power_model);
    if (!inst.gains || inst.gains->frontend_count() != inst.graph.frontends().size())
        throw Error(ErrorCode::InvalidArgument, "instance gain matrix does not match the graph");
    if (inst.power.size() != inst.graph.frontends().size())
        throw Error(ErrorCode::InvalidArgument, "one power plan per frontend is required");
    const double pmax = inst.radio.p_max_mw;
    for (const PowerPlan& plan : inst.power) {
        if (const auto* f = std::get_if<FixedPower>(&plan)) {
            if (!(f->mw >= 0.0 && f->mw <= pmax * (1.0 + 1e-12)))
                throw Error(ErrorCode::PowerOutOfRange, "fixed power outside [0, p_max]");
        } else if (const auto* d = std::get_if<DiscretePower>(&plan)) {
            if (d->levels_mw.empty()) throw Error(ErrorCode::InvalidArgument, "discrete plan without levels");
            for (std::size_t l = 0; l < d->levels_mw.size(); ++l) {
                if (!(d->levels_mw[l] >= 0.0 && d->levels_mw[l] <= pmax * (1.0 + 1e-12)))
                    throw Error(ErrorCode::PowerOutOfRange, "power level outside [0, p_max]");
                if (l > 0 && d->levels_mw[l] <= d->levels_mw[l - 1])
                    throw Error(ErrorCode::InvalidArgument, "power levels must be sorted and unique");
            }
        }
    }
    for (const Commodity& c : inst.commodities) {
        if (!(c.demand_mbps >= 0.0)) throw Error(ErrorCode::DemandMissing, "commodity demand must be set and >= 0");
        auto d = inst.graph.find_node(c.dest);
        if (!d || inst.graph.node_at(*d).kind != NodeKind::Ue || c.source != inst.graph.donor_id())
            throw Error(ErrorCode::InvalidArgument, "commodity must run from the donor to a UE");
    }
}

std::vector<double> power_upper_bounds(const ProblemInstance& inst) {
    std::vector<double> ub;
    ub.reserve(inst.power.size());
    for (const PowerPlan& plan : inst.power) {
        if (const auto* f = std::get_if<FixedPower>(&plan)) ub.push_back(f->mw);
        else if (const auto* d = std::get_if<DiscretePower>(&plan)) ub.push_back(d->levels_mw.back());
        else ub.push_back(inst.radio.p_max_mw);
    }
    return ub;
}

std::vector<double> power_candidates(const PowerPlan& plan, double p_max_mw) {
    if (const auto* f = std::get_if<FixedPower>(&plan)) return {f->mw};
    if (const auto* d = std::get_if<DiscretePower>(&plan)) return d->levels_mw;
    return {0.0, p_max_mw};
}

json power_plan_to_json(const PowerPlan& plan) {
    if (const auto* f = std::get_if<FixedPower>(&plan)) return {{"mode", "fixed"}, {"mw", f->mw}};
    if (const auto* d = std::get_if<DiscretePower>(&plan)) return {{"mode", "discrete"}, {"levels_mw", d->levels_mw}};
    return {{"mode", "continuous"}};
}

PowerPlan power_plan_from_json(const json& doc) {
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "fixed") return FixedPower{doc.at("mw").get<double>()};
    if (mode == "continuous") return ContinuousPower{};
    if (mode == "discrete") return DiscretePower{doc.at("levels_mw").get<std::vector<double>>()};
    throw Error(ErrorCode::ParseError, "unknown power mode '" + mode + "'");
}

json radio_to_json(const RadioParams& r) {
    return {{"g_tx_main_dbi", r.g_tx_main_dbi},         {"g_tx_side_dbi", r.g_tx_side_dbi},
            {"g_rx_main_dbi", r.g_rx_main_dbi},         {"g_rx_side_dbi", r.g_rx_side_dbi},
            {"g_bh_rx_main_dbi", r.g_bh_rx_main_dbi},   {"g_bh_rx_side_dbi", r.g_bh_rx_side_dbi},
            {"main_lobe_half_width_deg", r.main_lobe_half_width_deg},
            {"p_max_mw", r.p_max_mw},                   {"carrier_ghz", r.carrier_ghz},
            {"bandwidth_mhz", r.bandwidth_mhz},         {"mimo_layers", r.mimo_layers}};
}

RadioParams radio_from_json(const json& doc, RadioParams r) {
    r.g_tx_main_dbi = doc.value("g_tx_main_dbi", r.g_tx_main_dbi);
    r.g_tx_side_dbi = doc.value("g_tx_side_dbi", r.g_tx_side_dbi);
    r.g_rx_main_dbi = doc.value("g_rx_main_dbi", r.g_rx_main_dbi);
    r.g_rx_side_dbi = doc.value("g_rx_side_dbi", r.g_rx_side_dbi);
    r.g_bh_rx_main_dbi = doc.value("g_bh_rx_main_dbi", r.g_bh_rx_main_dbi);
    r.g_bh_rx_side_dbi = doc.value("g_bh_rx_side_dbi", r.g_bh_rx_side_dbi);
    r.main_lobe_half_width_deg = doc.value("main_lobe_half_width_deg", r.main_lobe_half_width_deg);
    r.p_max_mw = doc.value("p_max_mw", r.p_max_mw);
    r.carrier_ghz = doc.value("carrier_ghz", r.carrier_ghz);
    r.bandwidth_mhz = doc.value("bandwidth_mhz", r.bandwidth_mhz);
    r.mimo_layers = doc.value("mimo_layers", r.mimo_layers);
    return r;
}

json power_model_to_json(const PowerModelParams& p) {
    return {{"n_trx", p.n_trx},         {"p0_w", p.p0_w},       {"delta_p", p.delta_p},
            {"p_sleep_w", p.p_sleep_w}, {"p_max_w", p.p_max_w}, {"unit_active_w", p.unit_active_w}};
}

PowerModelParams power_model_from_json(const json& doc, PowerModelParams p) {
    p.n_trx = doc.value("n_trx", p.n_trx);
    p.p0_w = doc.value("p0_w", p.p0_w);
    p.delta_p = doc.value("delta_p", p.delta_p);
    p.p_sleep_w = doc.value("p_sleep_w", p.p_sleep_w);
    p.p_max_w = doc.value("p_max_w", p.p_max_w);
    p.unit_active_w = doc.value("unit_active_w", p.unit_active_w);
    return p;
}

json instance_settings_to_json(const ProblemInstance& inst) {
    json table = json::array();
    for (const McsEntry& e : inst.table.entries) table.push_back({e.index, e.sinr_threshold_db, e.capacity_mbps});
    json plans = json::array();
    for (std::size_t f = 0; f < inst.power.size(); ++f) {
        json p = power_plan_to_json(inst.power[f]);
        p["frontend"] = inst.graph.node_at(inst.graph.frontends()[f]).id;
        plans.push_back(std::move(p));
    }
    json commodities = json::array();
    for (const Commodity& c : inst.commodities)
        commodities.push_back({{"id", c.id}, {"source", c.source}, {"dest", c.dest}, {"demand_mbps", c.demand_mbps}});
    return {{"radio", radio_to_json(inst.radio)},
            {"power_model", power_model_to_json(inst.power_model)},
            {"noise_mw", inst.noise_mw},
            {"capacity_table",
             {{"bandwidth_mhz", inst.table.bandwidth_mhz}, {"mimo_layers", inst.table.mimo_layers}, {"entries", table}}},
            {"power", std::move(plans)},
            {"commodities", std::move(commodities)}};
}

ProblemInstance instance_from_json(MeasurementGraph graph, const json& s) {
    try {
        CapacityTable table;
        const json& t = s.at("capacity_table");
        table.bandwidth_mhz = t.at("bandwidth_mhz").get<double>();
        table.mimo_layers = t.at("mimo_layers").get<int>();
        for (const json& row : t.at("entries"))
            table.entries.push_back({row.at(0).get<int>(), row.at(1).get<double>(), row.at(2).get<double>()});
        validate(table);
        std::vector<Commodity> commodities;
        for (const json& c : s.at("commodities")) {
            commodities.push_back({c.at("id").get<int>(), c.at("source").get<NodeId>(), c.at("dest").get<NodeId>(),
                                   c.at("demand_mbps").get<double>()});
            if (!graph.find_node(commodities.back().dest))
                throw Error(ErrorCode::ParseError, "commodity UE " + std::to_string(commodities.back().dest) + " not in graph");
        }
        ProblemInstance inst = make_instance(std::move(graph), std::move(commodities), radio_from_json(s.at("radio")),
                                             std::move(table), power_model_from_json(s.at("power_model")));
        inst.noise_mw = s.value("noise_mw", 0.0);
        const json& plans = s.at("power");
        if (plans.size() != inst.power.size()) throw Error(ErrorCode::ParseError, "power plan count differs from graph");
        for (const json& p : plans) {
            auto node = inst.graph.find_node(p.at("frontend").get<NodeId>());
            auto ordinal = node ? inst.graph.frontend_ordinal(*node) : std::nullopt;
            if (!ordinal) throw Error(ErrorCode::ParseError, "power plan for unknown frontend " + p["frontend"].dump());
            inst.power[*ordinal] = power_plan_from_json(p);
        }
        validate(inst);
        return inst;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("instance settings: ") + e.what());
    }
}

}  // namespace iabopt
