#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iabopt {

/// Inputs of the TS 38.306 approximate peak-rate formula, one carrier.
struct Ts38306Params {
    int num_carriers = 1;
    int modulation_order = 8;      // Q, bits/symbol
    double scaling_factor = 1.0;   // f
    int mimo_layers = 4;           // v
    double max_code_rate = 948.0 / 1024.0;
    int n_prb = 273;
    double symbol_duration_us = 1000.0 / 28.0;  // 14 symbols per 0.5 ms slot (mu = 1)
    double overhead = 0.5485;      // calibrated against the 100 MHz / 4-layer plateau
};

/// Throws InvalidArgument when the parameters break their invariants.
void validate(const Ts38306Params& p);

/// 1e-6 * J * Q * f * v * R * N_prb * 12 / T_s * (1 - OH), in Mbps.
double ts38306_rate(const Ts38306Params& p);

/// Carrier layout for a channel bandwidth: PRB count and symbol duration.
Ts38306Params numerology_for(double bandwidth_mhz, int mimo_layers);

struct McsEntry {
    int index = 0;
    double sinr_threshold_db = 0.0;
    double capacity_mbps = 0.0;

    double threshold_linear() const noexcept;
};

struct CapacityTable {
    std::vector<McsEntry> entries;
    double bandwidth_mhz = 100.0;
    int mimo_layers = 4;

    std::size_t size() const noexcept { return entries.size(); }
    const McsEntry& top() const { return entries.back(); }
};

/// Throws NonMonotoneTable or BadRow.
void validate(const CapacityTable& table);

/// 100 MHz / 4-layer ladder digitized from the measured capacity curve,
/// rescaled for other bandwidths and layer counts by the peak-rate ratio.
CapacityTable default_table(double bandwidth_mhz = 100.0, int mimo_layers = 4);

/// CSV with header `index,sinr_threshold_db,capacity_mbps`.
CapacityTable parse_table_csv(std::string_view text);
CapacityTable load_table(const std::filesystem::path& path);
std::string table_to_csv(const CapacityTable& table);

struct McsLookup {
    std::optional<int> level;  // position in table.entries
    double capacity_mbps = 0.0;
};

/// Highest level i with S >= th_i * I (linear threshold); I == 0 with S > 0
/// grants the top level; no level met gives (none, 0).
McsLookup capacity_from_sinr(const CapacityTable& table, double signal_mw, double interference_mw);

/// Same lookup keyed by SINR in dB (threshold inclusive).
McsLookup capacity_at_sinr_db(const CapacityTable& table, double sinr_db);

}  // namespace iabopt
