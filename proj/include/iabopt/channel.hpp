#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iabopt/graph.hpp"

namespace iabopt {

/// Antenna and radio parameters. Gains are two-level (main/side lobe);
/// the backhaul receive pair applies to MT+DU receivers.
struct RadioParams {
    double g_tx_main_dbi = 24.0;
    double g_tx_side_dbi = -2.0;
    double g_rx_main_dbi = 0.0;
    double g_rx_side_dbi = -17.85;
    double g_bh_rx_main_dbi = 24.0;
    double g_bh_rx_side_dbi = -2.0;
    double main_lobe_half_width_deg = 60.0;
    double p_max_mw = 6300.0;
    double carrier_ghz = 3.6;
    double bandwidth_mhz = 100.0;
    int mimo_layers = 4;
};

/// Throws InvalidArgument when p_max_mw <= 0 or a side lobe exceeds its main lobe.
void validate(const RadioParams& radio);

/// Median 3GPP UMi street-canyon pathloss in dB (positive attenuation).
/// NLOS returns max(LOS, NLOS'). Throws OutOfModelRange outside the model's
/// validity (carrier 0.5-100 GHz, 0 < d2d <= 5 km, d3d >= d2d, heights > 1 m).
double pathloss_umi(double carrier_ghz, double d2d_m, double d3d_m, double h_bs_m, double h_ut_m, bool los);

/// UMi line-of-sight probability as a function of 2D distance.
double umi_los_probability(double d2d_m) noexcept;

/// Median O2I building penetration loss, high-loss (concrete/IRR glass) model:
/// through-wall loss plus the median indoor distance term. Added only for indoor UEs.
double o2i_loss(double carrier_ghz);

/// S = P * 10^(Gtx/10) * 10^(Grx/10) * 10^(-PL/10), in mW.
double link_signal(double p_tx_mw, double g_tx_dbi, double g_rx_dbi, double pathloss_db) noexcept;

/// 10 log10(S/I); +inf when I == 0 and S > 0, -inf when S == 0.
double sinr_db(double signal_mw, double interference_mw) noexcept;

struct LinkBudget {
    double signal_mw = 0.0;
    double interference_mw = 0.0;
    double sinr_db = 0.0;
};

/// Transmit gain of a frontend toward a target: main lobe inside
/// +-main_lobe_half_width_deg of the sector azimuth, side lobe otherwise.
double tx_gain_dbi(const Node& frontend, const Position& target, const RadioParams& radio) noexcept;
/// Receive gain: main lobe toward the serving frontend, side lobe toward interferers.
double rx_gain_dbi(const Node& receiver, bool serving, const RadioParams& radio) noexcept;

/// Interference at the receiver of a wireless edge from every other frontend
/// (ordinal-indexed powers). Frontends without a measured path to the
/// receiver contribute nothing. noise_mw is added unconditionally.
double link_interference(std::size_t victim_edge, std::span<const double> powers_mw, const MeasurementGraph& graph,
                         const RadioParams& radio, double noise_mw = 0.0);

/// A wireless link as a (transmitting frontend ordinal, receiver row) pair.
struct LinkRef {
    std::uint32_t tx = 0;
    std::uint32_t rx_row = 0;
};

/// Dense linear gain matrix receivers x frontends built from the full
/// measurement graph. serving() carries the receiver main lobe, interfering()
/// the side lobe; missing measurements are zero.
class GainMatrix {
public:
    GainMatrix() = default;
    GainMatrix(const MeasurementGraph& graph, const RadioParams& radio);

    std::size_t frontend_count() const noexcept { return frontends_; }
    std::size_t receiver_count() const noexcept { return receivers_; }
    std::optional<std::size_t> receiver_row(std::size_t node_index) const noexcept;

    double serving(std::size_t row, std::size_t fe) const { return serving_[row * frontends_ + fe]; }
    double interfering(std::size_t row, std::size_t fe) const { return interfering_[row * frontends_ + fe]; }
    std::span<const double> interfering_row(std::size_t row) const {
        return {interfering_.data() + row * frontends_, frontends_};
    }

    /// Reference for a wireless edge of any graph sharing node indexing with the source graph.
    LinkRef link_ref(const MeasurementGraph& graph, std::size_t edge_index) const;

    double signal_mw(LinkRef link, std::span<const double> powers_mw) const {
        return serving(link.rx_row, link.tx) * powers_mw[link.tx];
    }
    double interference_mw(LinkRef link, std::span<const double> powers_mw) const;

private:
    std::size_t frontends_ = 0;
    std::size_t receivers_ = 0;
    std::vector<std::ptrdiff_t> row_of_node_;
    std::vector<double> serving_;
    std::vector<double> interfering_;
};

}  // namespace iabopt
