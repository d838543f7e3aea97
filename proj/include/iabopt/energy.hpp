#pragma once

#include <span>
#include <vector>

#include "iabopt/graph.hpp"
#include "iabopt/solution.hpp"

namespace iabopt {

/// Affine RF-frontend power model with a sleep state (EARTH micro-cell
/// constants by default). Powers in W.
struct PowerModelParams {
    int n_trx = 2;
    double p0_w = 56.0;
    double delta_p = 2.6;
    double p_sleep_w = 39.0;
    double p_max_w = 6.3;
    double unit_active_w = 0.0;  // optional constant per unit with an active frontend
};

/// Throws InvalidArgument on negative values or p_sleep_w > p0_w.
void validate(const PowerModelParams& params);

/// p_tx = 0: n_trx * p_sleep; otherwise n_trx * p0 + alpha * delta_p * p_tx.
/// Throws PowerOutOfRange when p_tx or alpha leave their ranges.
double frontend_power(const PowerModelParams& params, double p_tx_w, double airtime_alpha);

struct EnergyReport {
    std::vector<double> per_frontend_w;  // by frontend ordinal
    double total_w = 0.0;
    std::size_t active_count = 0;
};

/// Network power: sleeping frontends draw n_trx * p_sleep, active ones
/// n_trx * p0 plus delta_p * P_tx times the sum of their outgoing wireless
/// airtimes. Throws InconsistentSolution when an inactive frontend transmits.
EnergyReport total_power(const MeasurementGraph& graph, std::span<const double> power_mw, std::span<const int> active,
                         std::span<const double> airtime, const PowerModelParams& params);
EnergyReport total_power(const MeasurementGraph& graph, const NetworkSolution& sol, const PowerModelParams& params);

/// Guaranteed rate over total power. Throws ZeroPower when total_w <= 0.
double energy_efficiency(double throughput_guarantee_mbps, double total_w);

}  // namespace iabopt
