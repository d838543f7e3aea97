#include "iabopt/scenario.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "iabopt/error.hpp"
#include "iabopt/graph_io.hpp"

namespace iabopt {

using nlohmann::json;

namespace {

constexpr int kMaxRedraws = 100;
constexpr NodeId kUnitIdBase = 100000;
constexpr NodeId kUnitIdStride = 10;

std::string_view to_string(DonorRule rule) { return rule == DonorRule::Centroid ? "centroid" : "first"; }

}  // namespace

void validate(const ScenarioConfig& c) {
    if (!(c.area_km2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "area_km2 must be positive");
    if (!(c.lambda_gnb >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda_gnb must be >= 0");
    if (c.sectors_per_unit < 1 || c.sectors_per_unit > 3)
        throw Error(ErrorCode::InvalidArgument, "sectors_per_unit must be 1, 2 or 3");
    if (!(c.l_ue_per_gnb >= 0.0)) throw Error(ErrorCode::InvalidArgument, "l_ue_per_gnb must be >= 0");
    if (!(c.r_indoor >= 0.0 && c.r_indoor <= 1.0)) throw Error(ErrorCode::InvalidArgument, "r_indoor must be in [0, 1]");
    if (!(c.demand_mbps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "demand_mbps must be >= 0");
    if (c.power_levels < 2) throw Error(ErrorCode::InvalidArgument, "power_levels must be >= 2");
    if (!(c.min_distance_m > 0.0)) throw Error(ErrorCode::InvalidArgument, "min_distance_m must be positive");
    if (!(c.noise_mw >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise_mw must be >= 0");
    validate(c.radio);
    validate(c.power_model);
}

ScenarioConfig scenario_config_from_json(const json& doc) {
    try {
        ScenarioConfig c;
        c.area_km2 = doc.value("area_km2", c.area_km2);
        c.lambda_gnb = doc.value("lambda_gnb", c.lambda_gnb);
        c.sectors_per_unit = doc.value("sectors_per_unit", c.sectors_per_unit);
        c.l_ue_per_gnb = doc.value("l_ue_per_gnb", c.l_ue_per_gnb);
        c.r_indoor = doc.value("r_indoor", c.r_indoor);
        c.h_bs_m = doc.value("h_bs_m", c.h_bs_m);
        c.h_ut_m = doc.value("h_ut_m", c.h_ut_m);
        c.min_distance_m = doc.value("min_distance_m", c.min_distance_m);
        c.coupling_cutoff_db = doc.value("coupling_cutoff_db", c.coupling_cutoff_db);
        c.demand_mbps = doc.value("demand_mbps", c.demand_mbps);
        c.power_levels = doc.value("power_levels", c.power_levels);
        c.noise_mw = doc.value("noise_mw", c.noise_mw);
        c.seed = doc.value("seed", c.seed);
        const std::string rule = doc.value("donor_rule", std::string("centroid"));
        if (rule == "centroid") c.donor_rule = DonorRule::Centroid;
        else if (rule == "first") c.donor_rule = DonorRule::First;
        else throw Error(ErrorCode::ParseError, "donor_rule must be 'centroid' or 'first'");
        if (doc.contains("radio")) c.radio = radio_from_json(doc["radio"]);
        // Shorthands for the two studied bands.
        c.radio.carrier_ghz = doc.value("carrier_ghz", c.radio.carrier_ghz);
        c.radio.bandwidth_mhz = doc.value("bandwidth_mhz", c.radio.bandwidth_mhz);
        c.radio.mimo_layers = doc.value("mimo_layers", c.radio.mimo_layers);
        if (doc.contains("power_model")) c.power_model = power_model_from_json(doc["power_model"]);
        c.power_model.p_max_w = c.radio.p_max_mw * 1e-3;
        if (doc.contains("capacity_table") && !doc["capacity_table"].is_null())
            c.capacity_table = doc["capacity_table"].get<std::string>();
        if (doc.contains("positions")) {
            const json& pos = doc["positions"];
            for (const json& u : pos.value("units", json::array()))
                c.unit_positions.emplace_back(u.at(0).get<double>(), u.at(1).get<double>());
            for (const json& u : pos.value("ues", json::array())) {
                UePosition p{u.at(0).get<double>(), u.at(1).get<double>(), std::nullopt};
                if (u.size() > 2) p.indoor = u.at(2).get<bool>();
                c.ue_positions.push_back(p);
            }
        }
        validate(c);
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("scenario config: ") + e.what());
    }
}

json scenario_config_to_json(const ScenarioConfig& c) {
    json doc = {{"area_km2", c.area_km2},
                {"lambda_gnb", c.lambda_gnb},
                {"sectors_per_unit", c.sectors_per_unit},
                {"l_ue_per_gnb", c.l_ue_per_gnb},
                {"r_indoor", c.r_indoor},
                {"h_bs_m", c.h_bs_m},
                {"h_ut_m", c.h_ut_m},
                {"min_distance_m", c.min_distance_m},
                {"coupling_cutoff_db", c.coupling_cutoff_db},
                {"demand_mbps", c.demand_mbps},
                {"power_levels", c.power_levels},
                {"noise_mw", c.noise_mw},
                {"seed", c.seed},
                {"donor_rule", to_string(c.donor_rule)},
                {"radio", radio_to_json(c.radio)},
                {"power_model", power_model_to_json(c.power_model)}};
    if (c.capacity_table) doc["capacity_table"] = c.capacity_table->string();
    if (!c.unit_positions.empty() || !c.ue_positions.empty()) {
        json units = json::array();
        for (auto [x, y] : c.unit_positions) units.push_back({x, y});
        json ues = json::array();
        for (const UePosition& u : c.ue_positions) {
            json row = {u.x, u.y};
            if (u.indoor) row.push_back(*u.indoor);
            ues.push_back(row);
        }
        doc["positions"] = {{"units", units}, {"ues", ues}};
    }
    return doc;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    return scenario_config_from_json(parse_json_text(read_text_file(path), path.string()));
}

LoadProfile parse_load_profile(std::string_view text) {
    LoadProfile profile;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (!header) {
            if (line != "hour,p") throw Error(ErrorCode::ParseError, "load profile needs header 'hour,p'");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        int hour = 0;
        double p = 0.0;
        try {
            if (comma == std::string::npos) throw std::invalid_argument("columns");
            std::size_t used = 0;
            hour = std::stoi(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("hour");
            const std::string rest = line.substr(comma + 1);
            p = std::stod(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("p");
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "load profile line " + std::to_string(line_no) + ": expected 'hour,p'");
        }
        if (hour < 0 || hour > 167)
            throw Error(ErrorCode::BadRange, "load profile line " + std::to_string(line_no) + ": hour outside 0..167");
        if (!(p > 0.0 && p <= 1.0))
            throw Error(ErrorCode::BadRange, "load profile line " + std::to_string(line_no) + ": p outside (0, 1]");
        if (!profile.p.emplace(hour, p).second)
            throw Error(ErrorCode::DuplicateHour, "load profile: hour " + std::to_string(hour) + " repeated");
    }
    if (!header) throw Error(ErrorCode::ParseError, "load profile is empty");
    return profile;
}

LoadProfile load_profile_csv(const std::filesystem::path& path) { return parse_load_profile(read_text_file(path)); }

double ue_density(const LoadProfile& profile, int hour, const ScenarioConfig& config) {
    auto it = profile.p.find(hour);
    if (it == profile.p.end()) throw Error(ErrorCode::MissingHour, "load profile has no hour " + std::to_string(hour));
    return it->second * config.l_ue_per_gnb * config.lambda_gnb;
}

ScenarioRng::ScenarioRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double ScenarioRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Scenario generate(const ScenarioConfig& config, const LoadProfile& profile, int hour) {
    auto it = profile.p.find(hour);
    if (it == profile.p.end()) throw Error(ErrorCode::MissingHour, "load profile has no hour " + std::to_string(hour));
    return generate_at_load(config, it->second, hour);
}

Scenario generate_at_load(const ScenarioConfig& config, double load, int hour) {
    validate(config);
    ScenarioRng rng(config.seed, static_cast<std::uint64_t>(hour));
    const double side = std::sqrt(config.area_km2) * 1000.0;
    const double fc = config.radio.carrier_ghz;

    std::vector<std::pair<double, double>> units = config.unit_positions;
    if (units.empty()) {
        const auto count = static_cast<long>(std::lround(config.lambda_gnb * config.area_km2));
        for (long u = 0; u < count; ++u) {
            const double x = rng.uniform(0.0, side);
            units.emplace_back(x, rng.uniform(0.0, side));
        }
    }
    if (units.empty()) throw Error(ErrorCode::EmptyScenario, "configuration yields no IAB units");

    std::size_t donor = 0;
    if (config.donor_rule == DonorRule::Centroid) {
        double cx = 0.0;
        double cy = 0.0;
        for (auto [x, y] : units) {
            cx += x;
            cy += y;
        }
        cx /= static_cast<double>(units.size());
        cy /= static_cast<double>(units.size());
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < units.size(); ++u) {
            const double d = std::hypot(units[u].first - cx, units[u].second - cy);
            if (d < best) {
                best = d;
                donor = u;
            }
        }
    }

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> unit_frontends(units.size());
    static constexpr double kAzimuths[3] = {0.0, 120.0, 240.0};
    for (std::size_t u = 0; u < units.size(); ++u) {
        const NodeId head = kUnitIdBase + static_cast<NodeId>(u) * kUnitIdStride;
        const Position pos{units[u].first, units[u].second, config.h_bs_m};
        nodes.push_back({head, u == donor ? NodeKind::DonorDu : NodeKind::MtDu, pos, static_cast<int>(u), false, 0.0});
        for (int s = 0; s < config.sectors_per_unit; ++s) {
            unit_frontends[u].push_back(nodes.size());
            nodes.push_back({head + 1 + s, NodeKind::Frontend, pos, static_cast<int>(u), false, kAzimuths[s]});
            edges.push_back({head, head + 1 + s, EdgeKind::Wired, 0.0, false});
        }
    }

    auto link_loss = [&](const Position& a, const Position& b, double h_rx, bool los) {
        const double d2d = std::max(distance_2d(a, b), config.min_distance_m);
        const double dz = a.z - b.z;
        return pathloss_umi(fc, d2d, std::sqrt(d2d * d2d + dz * dz), config.h_bs_m, h_rx, los);
    };

    // Backhaul: every frontend towards every foreign MT+DU under the cutoff.
    for (std::size_t u = 0; u < units.size(); ++u) {
        for (std::size_t w = 0; w < units.size(); ++w) {
            if (u == w) continue;
            const Position& pu = nodes[unit_frontends[u][0]].pos;
            const Position pw{units[w].first, units[w].second, config.h_bs_m};
            const bool los = rng.bernoulli(umi_los_probability(std::max(distance_2d(pu, pw), config.min_distance_m)));
            if (w == donor) continue;
            const double pl = link_loss(pu, pw, config.h_bs_m, los);
            if (pl > config.coupling_cutoff_db) continue;
            for (auto f : unit_frontends[u])
                edges.push_back({nodes[f].id, kUnitIdBase + static_cast<NodeId>(w) * kUnitIdStride, EdgeKind::Wireless,
                                 round_db(pl), los});
        }
    }

    const bool fixed_ues = !config.ue_positions.empty();
    const std::size_t ue_count =
        fixed_ues ? config.ue_positions.size()
                  : static_cast<std::size_t>(std::lround(load * config.l_ue_per_gnb * config.lambda_gnb * config.area_km2));
    for (std::size_t i = 0; i < ue_count; ++i) {
        const NodeId id = static_cast<NodeId>(i) + 1;
        std::vector<Edge> ue_edges;
        Node ue{id, NodeKind::Ue, {}, -1, false, 0.0};
        for (int attempt = 0; attempt < kMaxRedraws && ue_edges.empty(); ++attempt) {
            if (fixed_ues) {
                const UePosition& p = config.ue_positions[i];
                ue.pos = {p.x, p.y, config.h_ut_m};
                ue.indoor = p.indoor ? *p.indoor : rng.bernoulli(config.r_indoor);
            } else {
                const double x = rng.uniform(0.0, side);
                ue.pos = {x, rng.uniform(0.0, side), config.h_ut_m};
                ue.indoor = rng.bernoulli(config.r_indoor);
            }
            for (std::size_t u = 0; u < units.size(); ++u) {
                const Position& pu = nodes[unit_frontends[u][0]].pos;
                const double d2d = std::max(distance_2d(pu, ue.pos), config.min_distance_m);
                // Indoor UEs are always NLOS and pay the building penetration loss.
                const bool los = !ue.indoor && rng.bernoulli(umi_los_probability(d2d));
                const double pl = link_loss(pu, ue.pos, config.h_ut_m, los) + (ue.indoor ? o2i_loss(fc) : 0.0);
                if (pl > config.coupling_cutoff_db) continue;
                for (auto f : unit_frontends[u])
                    ue_edges.push_back({nodes[f].id, id, EdgeKind::Wireless, round_db(pl), los});
            }
            if (fixed_ues) break;
        }
        if (ue_edges.empty())
            throw Error(ErrorCode::DisconnectedUe, "UE " + std::to_string(id) + " has no link under the coupling cutoff");
        nodes.push_back(ue);
        edges.insert(edges.end(), ue_edges.begin(), ue_edges.end());
    }

    Scenario s{build_graph(std::move(nodes), std::move(edges)), {}, hour, load};
    s.commodities = make_commodities(s.graph, config.demand_mbps);
    return s;
}

ProblemInstance scenario_instance(const ScenarioConfig& config, const Scenario& scenario) {
    CapacityTable table = config.capacity_table ? load_table(*config.capacity_table)
                                                : default_table(config.radio.bandwidth_mhz, config.radio.mimo_layers);
    PowerModelParams pm = config.power_model;
    pm.p_max_w = config.radio.p_max_mw * 1e-3;
    ProblemInstance inst = make_instance(scenario.graph, scenario.commodities, config.radio, std::move(table), pm);
    inst.noise_mw = config.noise_mw;
    for (auto& plan : inst.power) plan = power_grid(config.radio.p_max_mw, config.power_levels);
    return inst;
}

}  // namespace iabopt
