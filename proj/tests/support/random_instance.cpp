#include "random_instance.hpp"

#include "iabopt/error.hpp"
#include "iabopt/oracle.hpp"

namespace iabopt::testing {

ScenarioConfig small_config(std::uint64_t seed, double noise_mw) {
    ScenarioConfig c;
    c.seed = seed;
    c.r_indoor = 0.5;
    c.sectors_per_unit = 1;
    c.noise_mw = noise_mw;
    return c;
}

namespace {

// Some frontend reaches the UE above the lowest MCS threshold when it is the only one transmitting.
bool every_ue_covered(const ProblemInstance& inst) {
    const double th = inst.table.entries.front().threshold_linear();
    for (auto u : inst.graph.ues()) {
        const auto row = *inst.gains->receiver_row(u);
        bool covered = false;
        for (std::size_t fe = 0; fe < inst.frontend_count(); ++fe)
            covered = covered || inst.gains->serving(row, fe) * inst.radio.p_max_mw >= th * inst.noise_mw;
        if (!covered) return false;
    }
    return true;
}

}  // namespace

ProblemInstance random_small_instance(std::uint64_t seed, const SmallInstanceShape& shape) {
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        ScenarioRng rng(seed, 1000 + attempt);
        ScenarioConfig c = small_config(seed * 7919 + attempt, shape.noise_mw);
        const int units = shape.min_units + static_cast<int>(rng.uniform() * (shape.max_units - shape.min_units + 1));
        const int ues = shape.min_ues + static_cast<int>(rng.uniform() * (shape.max_ues - shape.min_ues + 1));
        c.sectors_per_unit = 1 + static_cast<int>(rng.uniform() * shape.max_sectors);
        c.demand_mbps = shape.demand_mbps;
        for (int u = 0; u < units; ++u) {
            const double x = rng.uniform(0.0, shape.side_m);
            c.unit_positions.emplace_back(x, rng.uniform(0.0, shape.side_m));
        }
        for (int i = 0; i < ues; ++i) {
            const double x = rng.uniform(0.0, shape.side_m);
            c.ue_positions.push_back({x, rng.uniform(0.0, shape.side_m), std::nullopt});
        }
        try {
            Scenario s = generate_at_load(c, 1.0, 0);
            ProblemInstance inst = scenario_instance(c, s);
            for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, shape.power_levels);
            if (enumeration_size(inst, ProblemKind::Energy) > kEnumerationGuard) continue;
            if (shape.require_coverage && !every_ue_covered(inst)) continue;
            return inst;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DisconnectedUe) throw;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "no small instance for seed " + std::to_string(seed));
}

}  // namespace iabopt::testing
