#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "iabopt/graph.hpp"

namespace iabopt {

/// JSON graph schema:
///   {"nodes":[{"id","kind","unit_id","pos":[x,y,z],"indoor","sector_azimuth_deg"}],
///    "edges":[{"src","dst","kind","pathloss_db","los"}]}
/// dB values are written with 6 decimal digits.
nlohmann::json graph_to_json(const MeasurementGraph& graph);
MeasurementGraph graph_from_json(const nlohmann::json& doc);

std::string dump_graph(const MeasurementGraph& graph);
MeasurementGraph parse_graph(std::string_view text);

MeasurementGraph load_graph(const std::filesystem::path& path);
void save_graph(const MeasurementGraph& graph, const std::filesystem::path& path);

/// Rounds to 6 decimal digits, the on-disk precision of dB values.
double round_db(double value) noexcept;

/// Parses JSON text, converting syntax errors into ParseError with line context.
nlohmann::json parse_json_text(std::string_view text, std::string_view what);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace iabopt
