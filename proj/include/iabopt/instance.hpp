#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <json.hpp>

#include "iabopt/capacity.hpp"
#include "iabopt/channel.hpp"
#include "iabopt/energy.hpp"
#include "iabopt/graph.hpp"

namespace iabopt {

/// Per-frontend power decision domain.
struct FixedPower {
    double mw = 0.0;
};
struct ContinuousPower {};  // [0, p_max]
struct DiscretePower {
    std::vector<double> levels_mw;  // sorted, unique, within [0, p_max]
};
using PowerPlan = std::variant<FixedPower, ContinuousPower, DiscretePower>;

/// Evenly spaced grid {0, p_max/(n-1), ..., p_max}.
DiscretePower power_grid(double p_max_mw, int levels);

/// Everything an optimization run needs. `gains` is built once from the
/// unpruned graph so pruned instances keep every interference path.
struct ProblemInstance {
    MeasurementGraph graph;
    std::vector<Commodity> commodities;
    RadioParams radio;
    CapacityTable table;
    PowerModelParams power_model;
    std::vector<PowerPlan> power;  // by frontend ordinal
    std::shared_ptr<const GainMatrix> gains;
    double noise_mw = 0.0;

    std::size_t frontend_count() const noexcept { return power.size(); }
};

/// Instance with every frontend fixed at p_max.
ProblemInstance make_instance(MeasurementGraph graph, std::vector<Commodity> commodities, const RadioParams& radio,
                              CapacityTable table, const PowerModelParams& power_model);

/// Same instance on a subgraph (shares node indexing and the gain matrix).
ProblemInstance with_graph(const ProblemInstance& base, MeasurementGraph graph);

/// Throws PowerOutOfRange, UnsupportedMode or InvalidArgument.
void validate(const ProblemInstance& instance);

/// Upper bound of each frontend's power domain.
std::vector<double> power_upper_bounds(const ProblemInstance& instance);
/// Finite candidate set of a plan; Continuous yields {0, p_max}.
std::vector<double> power_candidates(const PowerPlan& plan, double p_max_mw);
bool power_allowed(const PowerPlan& plan, double p_mw, double p_max_mw, double tol = 1e-6);

nlohmann::json power_plan_to_json(const PowerPlan& plan);
PowerPlan power_plan_from_json(const nlohmann::json& doc);

/// Instance settings without the graph (radio, table, power model, plans,
/// commodities); used to make solution files self-contained.
nlohmann::json instance_settings_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(MeasurementGraph graph, const nlohmann::json& settings);

nlohmann::json radio_to_json(const RadioParams& radio);
RadioParams radio_from_json(const nlohmann::json& doc, RadioParams base = {});
nlohmann::json power_model_to_json(const PowerModelParams& params);
PowerModelParams power_model_from_json(const nlohmann::json& doc, PowerModelParams base = {});

}  // namespace iabopt
