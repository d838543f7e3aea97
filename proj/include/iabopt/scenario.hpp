#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "iabopt/capacity.hpp"
#include "iabopt/channel.hpp"
#include "iabopt/energy.hpp"
#include "iabopt/graph.hpp"
#include "iabopt/instance.hpp"

namespace iabopt {

enum class DonorRule { Centroid, First };

struct UePosition {
    double x = 0.0;
    double y = 0.0;
    std::optional<bool> indoor;
};

struct ScenarioConfig {
    double area_km2 = 0.092;
    double lambda_gnb = 90.0;  // units per km^2
    int sectors_per_unit = 3;
    double l_ue_per_gnb = 10.0;
    double r_indoor = 0.8;
    double h_bs_m = 10.0;
    double h_ut_m = 1.5;
    double min_distance_m = 10.0;
    double coupling_cutoff_db = 160.0;
    double demand_mbps = 5.0;
    int power_levels = 9;
    double noise_mw = 0.0;
    std::uint64_t seed = 1;
    DonorRule donor_rule = DonorRule::Centroid;
    RadioParams radio;
    PowerModelParams power_model;
    std::optional<std::filesystem::path> capacity_table;
    std::vector<std::pair<double, double>> unit_positions;  // overrides random placement
    std::vector<UePosition> ue_positions;                  // overrides random placement and count
};

/// Throws InvalidArgument when invariants fail (area > 0, r_indoor in [0,1], ...).
void validate(const ScenarioConfig& config);

ScenarioConfig scenario_config_from_json(const nlohmann::json& doc);
nlohmann::json scenario_config_to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Hourly normalized load p(t) in (0, 1].
struct LoadProfile {
    std::map<int, double> p;
};

/// CSV with header `hour,p`. Throws BadRange, DuplicateHour, ParseError.
LoadProfile parse_load_profile(std::string_view text);
LoadProfile load_profile_csv(const std::filesystem::path& path);

/// lambda_UE(t) = p(t) * l * lambda_gNB. Throws MissingHour.
double ue_density(const LoadProfile& profile, int hour, const ScenarioConfig& config);

/// Portable uniform draws on top of mt19937_64 (the standard distributions
/// are implementation-defined).
class ScenarioRng {
public:
    ScenarioRng(std::uint64_t seed, std::uint64_t stream);
    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

struct Scenario {
    MeasurementGraph graph;
    std::vector<Commodity> commodities;
    int hour = 0;
    double load = 1.0;
};

/// Seeded synthetic scenario for one hour. Throws EmptyScenario when the
/// configuration yields no units.
Scenario generate(const ScenarioConfig& config, const LoadProfile& profile, int hour);
/// Same with an explicit load value (no profile lookup).
Scenario generate_at_load(const ScenarioConfig& config, double load, int hour);

/// Optimization instance for a generated scenario: radio and power model
/// from the config, capacity table scaled to the configured bandwidth,
/// every frontend on the power_levels grid.
ProblemInstance scenario_instance(const ScenarioConfig& config, const Scenario& scenario);

}  // namespace iabopt
