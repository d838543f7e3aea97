#pragma once

#include <vector>

#include "iabopt/instance.hpp"

namespace iabopt::testing {

/// Table with the given (threshold dB, capacity) steps.
CapacityTable step_table(std::vector<std::pair<double, double>> steps);

/// Pathloss that puts a link at the given SINR over noise alone.
double pathloss_for_sinr(double sinr_db, double p_mw, double g_tx_dbi, double g_rx_dbi, double noise_mw);

inline constexpr double kNoiseMw = 1e-9;

/// Donor unit with one frontend (azimuth 0) serving UEs on the +x axis.
/// UE i gets an SINR over noise of ue_sinr_db[i]; every frontend is fixed at p_max.
ProblemInstance star_instance(const std::vector<double>& ue_sinr_db, CapacityTable table, double demand_mbps = 0.0);

/// donor -> frontend A ~> relay MT+DU -> frontend B ~> UE; both hops at `sinr_db`.
ProblemInstance chain_instance(double sinr_db, CapacityTable table, double demand_mbps = 0.0);

/// Two units, each with one frontend, the relay reached over backhaul, one UE
/// per unit at `serving_sinr_db` over noise. Each frontend also reaches the
/// other UE `cross_db` below its serving link. UE receivers are omni, so a
/// cross link serves and interferes at the same strength.
ProblemInstance interfering_pair(double serving_sinr_db, double cross_db, CapacityTable table,
                                 double demand_mbps = 0.0);

}  // namespace iabopt::testing
