#pragma once

#include <cstdint>

#include "iabopt/instance.hpp"
#include "iabopt/scenario.hpp"

namespace iabopt::testing {

struct SmallInstanceShape {
    int min_units = 2;
    int max_units = 3;
    int max_sectors = 2;
    int min_ues = 1;
    int max_ues = 3;
    double side_m = 400.0;
    int power_levels = 2;
    double demand_mbps = 5.0;
    bool require_coverage = true;
    double noise_mw = 2e-9;  // about -87 dBm: 100 MHz thermal noise plus 7 dB noise figure
};

/// Seeded random instance small enough for exhaustive enumeration: units and
/// UEs dropped in a square, every frontend on a power grid with
/// shape.power_levels levels. Seeds that give a disconnected UE are skipped
/// deterministically.
ProblemInstance random_small_instance(std::uint64_t seed, const SmallInstanceShape& shape = {});

/// Scenario config used by random_small_instance (without positions).
ScenarioConfig small_config(std::uint64_t seed, double noise_mw = 0.0);

}  // namespace iabopt::testing
