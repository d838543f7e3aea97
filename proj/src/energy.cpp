#include "iabopt/energy.hpp"

#include <set>

#include "iabopt/error.hpp"

namespace iabopt {

namespace {
constexpr double kTol = 1e-9;
}

void validate(const PowerModelParams& p) {
    if (p.n_trx < 0 || p.p0_w < 0.0 || p.delta_p < 0.0 || p.p_sleep_w < 0.0 || p.p_max_w < 0.0 || p.unit_active_w < 0.0)
        throw Error(ErrorCode::InvalidArgument, "power model parameters must be non-negative");
    if (p.p_sleep_w > p.p0_w) throw Error(ErrorCode::InvalidArgument, "p_sleep_w must not exceed p0_w");
}

double frontend_power(const PowerModelParams& params, double p_tx_w, double airtime_alpha) {
    if (!(p_tx_w >= 0.0) || p_tx_w > params.p_max_w * (1.0 + kTol))
        throw Error(ErrorCode::PowerOutOfRange, "transmit power " + std::to_string(p_tx_w) + " W outside [0, p_max]");
    if (!(airtime_alpha >= 0.0) || airtime_alpha > 1.0 + 1e-6)
        throw Error(ErrorCode::PowerOutOfRange, "airtime " + std::to_string(airtime_alpha) + " outside [0, 1]");
    if (p_tx_w == 0.0) return params.n_trx * params.p_sleep_w;
    return params.n_trx * params.p0_w + airtime_alpha * params.delta_p * p_tx_w;
}

EnergyReport total_power(const MeasurementGraph& graph, std::span<const double> power_mw, std::span<const int> active,
                         std::span<const double> airtime, const PowerModelParams& params) {
    const auto frontends = graph.frontends();
    if (power_mw.size() != frontends.size() || active.size() != frontends.size() || airtime.size() != graph.edge_count())
        throw Error(ErrorCode::InconsistentSolution, "solution vectors do not match the graph");
    EnergyReport report;
    report.per_frontend_w.resize(frontends.size());
    std::set<int> active_units;
    for (std::size_t f = 0; f < frontends.size(); ++f) {
        const std::size_t node = frontends[f];
        double alpha = 0.0;
        for (auto e : graph.out_edges(node))
            if (graph.edge_at(e).kind == EdgeKind::Wireless) alpha += airtime[e];
        if (active[f] == 0) {
            if (power_mw[f] > 0.0)
                throw Error(ErrorCode::InconsistentSolution,
                            "frontend " + std::to_string(graph.node_at(node).id) + " sleeps but transmits");
            report.per_frontend_w[f] = params.n_trx * params.p_sleep_w;
        } else {
            ++report.active_count;
            active_units.insert(graph.node_at(node).unit_id);
            // An active frontend at zero power still pays its baseline.
            report.per_frontend_w[f] = params.n_trx * params.p0_w + alpha * params.delta_p * power_mw[f] * 1e-3;
        }
        report.total_w += report.per_frontend_w[f];
    }
    report.total_w += params.unit_active_w * static_cast<double>(active_units.size());
    return report;
}

EnergyReport total_power(const MeasurementGraph& graph, const NetworkSolution& sol, const PowerModelParams& params) {
    return total_power(graph, sol.power_mw, sol.active, sol.airtime, params);
}

double energy_efficiency(double throughput_guarantee_mbps, double total_w) {
    if (!(total_w > 0.0)) throw Error(ErrorCode::ZeroPower, "total power must be positive");
    return throughput_guarantee_mbps / total_w;
}

}  // namespace iabopt
