#include "iabopt/capacity.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "iabopt/error.hpp"
#include "iabopt/graph_io.hpp"

namespace iabopt {

namespace {

// Step onsets (first curve sample showing the step) and plateau values of
// the 100 MHz / 4-layer capacity curve.
constexpr std::array<std::pair<double, double>, 25> kLadder100Mhz4L{{
    {-4.92462311557789, 51.76899},
    {-4.32160804020101, 108.28347075},
    {0.201005025125625, 132.873741},
    {1.40703517587939, 163.50372675},
    {3.21608040201005, 193.70230425},
    {4.72361809045226, 226.9207395},
    {6.23115577889447, 259.7077665},
    {6.83417085427136, 293.35761},
    {8.34170854271357, 326.144637},
    {9.24623115577889, 374.462361},
    {10.4522613065327, 422.780085},
    {12.2613065326633, 477.1375245},
    {13.4673366834171, 531.494964},
    {14.070351758794, 566.8704405},
    {14.6733668341708, 603.1087335},
    {16.1809045226131, 669.11419575},
    {17.0854271356784, 733.82543325},
    {17.9899497487437, 797.242446},
    {19.7989949748744, 861.9536835},
    {21.0050251256281, 930.54759525},
    {22.5125628140703, 999.141507},
    {23.7185929648241, 1063.8527445},
    {26.7336683417085, 1129.85820675},
    {27.9396984924623, 1177.7445225},
    {33.3668341708543, 1226.925063},
}};

double parse_double(std::string_view cell, std::size_t line) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value))
        throw Error(ErrorCode::BadRow, "line " + std::to_string(line) + ": bad number '" + std::string(cell) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

void validate(const Ts38306Params& p) {
    if (p.num_carriers < 1) throw Error(ErrorCode::InvalidArgument, "num_carriers must be >= 1");
    if (p.modulation_order != 2 && p.modulation_order != 4 && p.modulation_order != 6 && p.modulation_order != 8)
        throw Error(ErrorCode::InvalidArgument, "modulation order must be 2, 4, 6 or 8");
    if (p.mimo_layers < 1) throw Error(ErrorCode::InvalidArgument, "mimo_layers must be >= 1");
    if (!(p.scaling_factor > 0.0 && p.scaling_factor <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "scaling factor must be in (0, 1]");
    if (!(p.max_code_rate > 0.0 && p.max_code_rate <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "max code rate must be in (0, 1]");
    if (p.n_prb < 1 || !(p.symbol_duration_us > 0.0))
        throw Error(ErrorCode::InvalidArgument, "n_prb and symbol duration must be positive");
    // OH = 1 is accepted as the degenerate zero-rate case.
    if (!(p.overhead >= 0.0 && p.overhead <= 1.0)) throw Error(ErrorCode::InvalidArgument, "overhead must be in [0, 1]");
}

double ts38306_rate(const Ts38306Params& p) {
    validate(p);
    const double per_carrier = static_cast<double>(p.modulation_order) * p.scaling_factor * p.mimo_layers *
                               p.max_code_rate * p.n_prb * 12.0 / (p.symbol_duration_us * 1e-6) *
                               (1.0 - p.overhead);
    return 1e-6 * p.num_carriers * per_carrier;
}

Ts38306Params numerology_for(double bandwidth_mhz, int mimo_layers) {
    struct Layout {
        double bw;
        int n_prb;
        int mu;
    };
    // Maximum transmission bandwidth configurations (30 kHz SCS up to
    // 100 MHz, 120 kHz SCS above).
    static constexpr std::array<Layout, 6> kLayouts{{
        {20.0, 51, 1}, {40.0, 106, 1}, {50.0, 133, 1}, {100.0, 273, 1}, {200.0, 132, 3}, {400.0, 264, 3}}};
    for (const auto& l : kLayouts) {
        if (std::abs(l.bw - bandwidth_mhz) < 1e-9) {
            Ts38306Params p;
            p.mimo_layers = mimo_layers;
            p.n_prb = l.n_prb;
            p.symbol_duration_us = 1000.0 / (14.0 * std::pow(2.0, l.mu));
            return p;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unsupported bandwidth " + std::to_string(bandwidth_mhz) + " MHz");
}

double McsEntry::threshold_linear() const noexcept { return std::pow(10.0, sinr_threshold_db / 10.0); }

void validate(const CapacityTable& table) {
    if (table.entries.empty() || table.entries.size() > 28)
        throw Error(ErrorCode::BadRow, "capacity table must have 1 to 28 entries");
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const McsEntry& e = table.entries[i];
        if (e.index < 0 || e.index > 27) throw Error(ErrorCode::BadRow, "MCS index out of 0..27");
        if (!std::isfinite(e.sinr_threshold_db) || !std::isfinite(e.capacity_mbps) || e.capacity_mbps < 0.0)
            throw Error(ErrorCode::BadRow, "entry " + std::to_string(e.index) + " has an invalid value");
        if (i == 0) continue;
        const McsEntry& prev = table.entries[i - 1];
        if (e.index <= prev.index) throw Error(ErrorCode::BadRow, "rows must be sorted by index");
        if (e.sinr_threshold_db <= prev.sinr_threshold_db)
            throw Error(ErrorCode::NonMonotoneTable, "threshold of index " + std::to_string(e.index) + " not increasing");
        if (e.capacity_mbps < prev.capacity_mbps)
            throw Error(ErrorCode::NonMonotoneTable, "capacity of index " + std::to_string(e.index) + " decreases");
    }
}

CapacityTable default_table(double bandwidth_mhz, int mimo_layers) {
    const double scale = ts38306_rate(numerology_for(bandwidth_mhz, mimo_layers)) / ts38306_rate(numerology_for(100.0, 4));
    CapacityTable t;
    t.bandwidth_mhz = bandwidth_mhz;
    t.mimo_layers = mimo_layers;
    for (std::size_t i = 0; i < kLadder100Mhz4L.size(); ++i) {
        const auto [th, cap] = kLadder100Mhz4L[i];
        t.entries.push_back({static_cast<int>(i), th, cap * scale});
    }
    return t;
}

CapacityTable parse_table_csv(std::string_view text) {
    CapacityTable table;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        if (!header_seen) {
            if (line != "index,sinr_threshold_db,capacity_mbps")
                throw Error(ErrorCode::BadRow, "missing header 'index,sinr_threshold_db,capacity_mbps'");
            header_seen = true;
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != 3)
            throw Error(ErrorCode::BadRow, "line " + std::to_string(line_no) + ": expected 3 columns");
        const double index = parse_double(cells[0], line_no);
        if (index != std::floor(index)) throw Error(ErrorCode::BadRow, "line " + std::to_string(line_no) + ": index");
        table.entries.push_back({static_cast<int>(index), parse_double(cells[1], line_no), parse_double(cells[2], line_no)});
    }
    if (!header_seen) throw Error(ErrorCode::BadRow, "empty capacity table");
    validate(table);
    return table;
}

CapacityTable load_table(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const Error&) {
        throw Error(ErrorCode::BadRow, "cannot open " + path.string());
    }
    return parse_table_csv(text);
}

std::string table_to_csv(const CapacityTable& table) {
    std::ostringstream out;
    out.precision(17);
    out << "index,sinr_threshold_db,capacity_mbps\n";
    for (const McsEntry& e : table.entries) out << e.index << ',' << e.sinr_threshold_db << ',' << e.capacity_mbps << '\n';
    return out.str();
}

McsLookup capacity_from_sinr(const CapacityTable& table, double signal_mw, double interference_mw) {
    if (table.entries.empty()) return {};
    if (interference_mw <= 0.0) {
        if (signal_mw > 0.0) return {static_cast<int>(table.size() - 1), table.top().capacity_mbps};
        return {};
    }
    for (std::size_t i = table.size(); i-- > 0;) {
        if (signal_mw >= table.entries[i].threshold_linear() * interference_mw)
            return {static_cast<int>(i), table.entries[i].capacity_mbps};
    }
    return {};
}

McsLookup capacity_at_sinr_db(const CapacityTable& table, double sinr_db) {
    for (std::size_t i = table.size(); i-- > 0;) {
        if (sinr_db >= table.entries[i].sinr_threshold_db) return {static_cast<int>(i), table.entries[i].capacity_mbps};
    }
    return {};
}

}  // namespace iabopt
