#include "iabopt/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "iabopt/error.hpp"

namespace iabopt {

namespace {

constexpr double kSpeedOfLight = 3.0e8;
constexpr double kEffectiveEnvironmentHeight = 1.0;
// Median of min(U(0,25), U(0,25)) metres, at 0.5 dB/m.
const double kMedianIndoorLossDb = 0.5 * 25.0 * (1.0 - 1.0 / std::numbers::sqrt2);

void require_carrier(double carrier_ghz) {
    if (!(carrier_ghz >= 0.5 && carrier_ghz <= 100.0))
        throw Error(ErrorCode::OutOfModelRange, "carrier " + std::to_string(carrier_ghz) + " GHz outside 0.5-100 GHz");
}

}  // namespace

void validate(const RadioParams& radio) {
    if (!(radio.p_max_mw > 0.0)) throw Error(ErrorCode::InvalidArgument, "p_max_mw must be positive");
    if (radio.g_tx_main_dbi < radio.g_tx_side_dbi || radio.g_rx_main_dbi < radio.g_rx_side_dbi ||
        radio.g_bh_rx_main_dbi < radio.g_bh_rx_side_dbi)
        throw Error(ErrorCode::InvalidArgument, "main-lobe gain below side-lobe gain");
    if (radio.mimo_layers < 1) throw Error(ErrorCode::InvalidArgument, "mimo_layers must be >= 1");
}

double pathloss_umi(double carrier_ghz, double d2d_m, double d3d_m, double h_bs_m, double h_ut_m, bool los) {
    require_carrier(carrier_ghz);
    if (!(d2d_m > 0.0) || d2d_m > 5000.0)
        throw Error(ErrorCode::OutOfModelRange, "2D distance " + std::to_string(d2d_m) + " m outside (0, 5000]");
    if (!(d3d_m >= d2d_m - 1e-9)) throw Error(ErrorCode::OutOfModelRange, "3D distance shorter than 2D distance");
    if (!(h_bs_m > kEffectiveEnvironmentHeight) || !(h_ut_m > kEffectiveEnvironmentHeight))
        throw Error(ErrorCode::OutOfModelRange, "antenna heights must exceed 1 m");

    const double h_bs_eff = h_bs_m - kEffectiveEnvironmentHeight;
    const double h_ut_eff = h_ut_m - kEffectiveEnvironmentHeight;
    const double breakpoint = 4.0 * h_bs_eff * h_ut_eff * carrier_ghz * 1e9 / kSpeedOfLight;
    const double log_fc = std::log10(carrier_ghz);

    double pl_los = 0.0;
    if (d2d_m <= breakpoint) {
        pl_los = 32.4 + 21.0 * std::log10(d3d_m) + 20.0 * log_fc;
    } else {
        const double dh = h_bs_m - h_ut_m;
        pl_los = 32.4 + 40.0 * std::log10(d3d_m) + 20.0 * log_fc - 9.5 * std::log10(breakpoint * breakpoint + dh * dh);
    }
    if (los) return pl_los;
    const double pl_nlos = 35.3 * std::log10(d3d_m) + 22.4 + 21.3 * log_fc - 0.3 * (h_ut_m - 1.5);
    return std::max(pl_los, pl_nlos);
}

double umi_los_probability(double d2d_m) noexcept {
    if (d2d_m <= 18.0) return 1.0;
    return 18.0 / d2d_m + std::exp(-d2d_m / 36.0) * (1.0 - 18.0 / d2d_m);
}

double o2i_loss(double carrier_ghz) {
    require_carrier(carrier_ghz);
    const double irr_glass = 23.0 + 0.3 * carrier_ghz;
    const double concrete = 5.0 + 4.0 * carrier_ghz;
    const double through_wall =
        5.0 - 10.0 * std::log10(0.7 * std::pow(10.0, -irr_glass / 10.0) + 0.3 * std::pow(10.0, -concrete / 10.0));
    return through_wall + kMedianIndoorLossDb;
}

double link_signal(double p_tx_mw, double g_tx_dbi, double g_rx_dbi, double pathloss_db) noexcept {
    return p_tx_mw * std::pow(10.0, (g_tx_dbi + g_rx_dbi - pathloss_db) / 10.0);
}

double sinr_db(double signal_mw, double interference_mw) noexcept {
    if (signal_mw <= 0.0) return -std::numeric_limits<double>::infinity();
    if (interference_mw <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal_mw / interference_mw);
}

double tx_gain_dbi(const Node& frontend, const Position& target, const RadioParams& radio) noexcept {
    const double dx = target.x - frontend.pos.x;
    const double dy = target.y - frontend.pos.y;
    if (dx == 0.0 && dy == 0.0) return radio.g_tx_main_dbi;
    const double bearing = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
    double off = std::fmod(bearing - frontend.sector_azimuth_deg, 360.0);
    if (off > 180.0) off -= 360.0;
    if (off <= -180.0) off += 360.0;
    return std::abs(off) <= radio.main_lobe_half_width_deg ? radio.g_tx_main_dbi : radio.g_tx_side_dbi;
}

double rx_gain_dbi(const Node& receiver, bool serving, const RadioParams& radio) noexcept {
    if (receiver.kind == NodeKind::Ue) return serving ? radio.g_rx_main_dbi : radio.g_rx_side_dbi;
    return serving ? radio.g_bh_rx_main_dbi : radio.g_bh_rx_side_dbi;
}

double link_interference(std::size_t victim_edge, std::span<const double> powers_mw, const MeasurementGraph& graph,
                         const RadioParams& radio, double noise_mw) {
    const Edge& victim = graph.edge_at(victim_edge);
    if (victim.kind != EdgeKind::Wireless) throw Error(ErrorCode::InvalidArgument, "victim edge must be wireless");
    const std::size_t rx = graph.index_of(victim.dst);
    const Node& receiver = graph.node_at(rx);
    double total = noise_mw;
    for (auto e : graph.in_edges(rx)) {
        const Edge& path = graph.edge_at(e);
        if (path.kind != EdgeKind::Wireless || path.src == victim.src) continue;
        const std::size_t r = graph.index_of(path.src);
        const double p = powers_mw[*graph.frontend_ordinal(r)];
        if (p <= 0.0) continue;
        total += link_signal(p, tx_gain_dbi(graph.node_at(r), receiver.pos, radio),
                             rx_gain_dbi(receiver, false, radio), path.pathloss_db);
    }
    return total;
}

GainMatrix::GainMatrix(const MeasurementGraph& graph, const RadioParams& radio)
    : frontends_(graph.frontends().size()) {
    row_of_node_.assign(graph.node_count(), -1);
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        const NodeKind kind = graph.node_at(v).kind;
        if (kind == NodeKind::Ue || kind == NodeKind::MtDu) row_of_node_[v] = static_cast<std::ptrdiff_t>(receivers_++);
    }
    serving_.assign(receivers_ * frontends_, 0.0);
    interfering_.assign(receivers_ * frontends_, 0.0);
    for (const Edge& e : graph.edges()) {
        if (e.kind != EdgeKind::Wireless) continue;
        const std::size_t s = graph.index_of(e.src);
        const std::size_t d = graph.index_of(e.dst);
        const Node& receiver = graph.node_at(d);
        const double gtx = tx_gain_dbi(graph.node_at(s), receiver.pos, radio);
        const std::size_t cell = static_cast<std::size_t>(row_of_node_[d]) * frontends_ + *graph.frontend_ordinal(s);
        serving_[cell] = link_signal(1.0, gtx, rx_gain_dbi(receiver, true, radio), e.pathloss_db);
        interfering_[cell] = link_signal(1.0, gtx, rx_gain_dbi(receiver, false, radio), e.pathloss_db);
    }
}

std::optional<std::size_t> GainMatrix::receiver_row(std::size_t node_index) const noexcept {
    if (node_index >= row_of_node_.size() || row_of_node_[node_index] < 0) return std::nullopt;
    return static_cast<std::size_t>(row_of_node_[node_index]);
}

LinkRef GainMatrix::link_ref(const MeasurementGraph& graph, std::size_t edge_index) const {
    const Edge& e = graph.edge_at(edge_index);
    if (e.kind != EdgeKind::Wireless) throw Error(ErrorCode::InvalidArgument, "link_ref needs a wireless edge");
    auto fe = graph.frontend_ordinal(graph.index_of(e.src));
    auto row = receiver_row(graph.index_of(e.dst));
    if (!fe || !row || *fe >= frontends_) throw Error(ErrorCode::InvalidArgument, "edge not covered by gain matrix");
    return {static_cast<std::uint32_t>(*fe), static_cast<std::uint32_t>(*row)};
}

double GainMatrix::interference_mw(LinkRef link, std::span<const double> powers_mw) const {
    const auto row = interfering_row(link.rx_row);
    double total = 0.0;
    for (std::size_t r = 0; r < frontends_; ++r) {
        if (r == link.tx) continue;
        total += row[r] * powers_mw[r];
    }
    return total;
}

}  // namespace iabopt
