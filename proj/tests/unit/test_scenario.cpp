#include <doctest.h>

#include <sstream>

#include "iabopt/error.hpp"
#include "iabopt/graph_io.hpp"
#include "iabopt/scenario.hpp"

using namespace iabopt;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

std::string full_week(double p) {
    std::ostringstream out;
    out << "hour,p\n";
    for (int h = 0; h < 168; ++h) out << h << ',' << p << '\n';
    return out.str();
}

}  // namespace

TEST_CASE("load profile parsing") {
    LoadProfile week = parse_load_profile(full_week(0.5));
    CHECK(week.p.size() == 168);
    CHECK(week.p.at(167) == 0.5);
    CHECK(parse_load_profile("hour,p\r\n0,1\r\n\n3,0.25\n").p.size() == 2);
    CHECK(code_of([] { parse_load_profile("hour,p\n0,0\n"); }) == ErrorCode::BadRange);
    CHECK(code_of([] { parse_load_profile("hour,p\n0,1.2\n"); }) == ErrorCode::BadRange);
    CHECK(code_of([] { parse_load_profile("hour,p\n168,0.5\n"); }) == ErrorCode::BadRange);
    CHECK(code_of([] { parse_load_profile("hour,p\n4,0.5\n4,0.6\n"); }) == ErrorCode::DuplicateHour);
    CHECK(code_of([] { parse_load_profile("h,p\n0,0.5\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_load_profile("hour,p\n0;0.5\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_load_profile("hour,p\n0,0.5x\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_load_profile(""); }) == ErrorCode::ParseError);
}

TEST_CASE("UE density") {
    ScenarioConfig c;
    c.lambda_gnb = 18.0;
    c.l_ue_per_gnb = 10.0;
    LoadProfile lp = parse_load_profile("hour,p\n0,0.5\n1,1\n2,0.25\n");
    CHECK(ue_density(lp, 0, c) == doctest::Approx(90.0).epsilon(1e-15));
    CHECK(ue_density(lp, 1, c) == doctest::Approx(2 * ue_density(lp, 0, c)).epsilon(1e-15));
    CHECK(ue_density(lp, 2, c) == doctest::Approx(0.5 * ue_density(lp, 0, c)).epsilon(1e-15));
    CHECK(code_of([&] { ue_density(lp, 3, c); }) == ErrorCode::MissingHour);
    // Peak density of the studied deployment range: lambda_gNB <= 90 keeps it within 0-900 UE/km^2.
    c.lambda_gnb = 90.0;
    CHECK(ue_density(lp, 1, c) <= 900.0);
}

TEST_CASE("generation is deterministic in (seed, hour)") {
    ScenarioConfig c;
    c.seed = 7;
    const std::string a = dump_graph(generate_at_load(c, 0.6, 3).graph);
    const std::string b = dump_graph(generate_at_load(c, 0.6, 3).graph);
    CHECK(a == b);
    CHECK(a != dump_graph(generate_at_load(c, 0.6, 4).graph));
    c.seed = 8;
    CHECK(a != dump_graph(generate_at_load(c, 0.6, 3).graph));
}

TEST_CASE("generated graph shape") {
    ScenarioConfig c;
    c.seed = 3;
    Scenario s = generate_at_load(c, 1.0, 0);
    const MeasurementGraph& g = s.graph;
    const long units = std::lround(c.lambda_gnb * c.area_km2);
    CHECK(static_cast<long>(g.frontends().size()) == units * c.sectors_per_unit);
    CHECK(g.ues().size() == static_cast<std::size_t>(std::lround(c.l_ue_per_gnb * c.lambda_gnb * c.area_km2)));
    CHECK(s.commodities.size() == g.ues().size());
    int donors = 0;
    for (const Node& n : g.nodes()) donors += n.kind == NodeKind::DonorDu;
    CHECK(donors == 1);
    for (const Edge& e : g.edges()) {
        if (e.kind == EdgeKind::Wireless) CHECK(e.pathloss_db <= c.coupling_cutoff_db);
    }
    for (std::size_t f : g.frontends()) {
        const double az = g.node_at(f).sector_azimuth_deg;
        CHECK((az == 0.0 || az == 120.0 || az == 240.0));
    }
    // The whole graph survives a serialization round trip.
    CHECK(structurally_equal(parse_graph(dump_graph(g)), g));
}

TEST_CASE("expected UE count doubles with the load") {
    ScenarioConfig c;
    double low = 0.0, high = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        c.seed = seed;
        low += static_cast<double>(generate_at_load(c, 0.25, 0).graph.ues().size());
        high += static_cast<double>(generate_at_load(c, 0.5, 0).graph.ues().size());
    }
    CHECK(high / low == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("indoor fraction") {
    ScenarioConfig c;
    c.seed = 11;
    c.l_ue_per_gnb = 1000.0 / (c.lambda_gnb * c.area_km2);
    Scenario s = generate_at_load(c, 1.0, 0);
    REQUIRE(s.graph.ues().size() == 1000);
    int indoor = 0;
    for (std::size_t u : s.graph.ues()) indoor += s.graph.node_at(u).indoor;
    CHECK(indoor / 1000.0 == doctest::Approx(0.8).epsilon(0.03 / 0.8));
}

TEST_CASE("position overrides and errors") {
    ScenarioConfig c;
    c.unit_positions = {{0.0, 0.0}, {100.0, 0.0}};
    c.ue_positions = {{50.0, 10.0, false}, {60.0, -10.0, true}};
    c.donor_rule = DonorRule::First;
    Scenario s = generate_at_load(c, 1.0, 0);
    CHECK(s.graph.ues().size() == 2);
    CHECK(s.graph.node_at(s.graph.donor_index()).pos.x == 0.0);
    CHECK_FALSE(s.graph.node_at(s.graph.ues()[0]).indoor);
    CHECK(s.graph.node_at(s.graph.ues()[1]).indoor);

    ScenarioConfig none;
    none.lambda_gnb = 0.0;
    CHECK(code_of([&] { generate_at_load(none, 1.0, 0); }) == ErrorCode::EmptyScenario);
    // Zero UEs is a legal (sleep-all) scenario.
    ScenarioConfig quiet;
    quiet.l_ue_per_gnb = 0.0;
    CHECK(generate_at_load(quiet, 1.0, 0).commodities.empty());

    ScenarioConfig bad;
    bad.r_indoor = 1.5;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.area_km2 = 0.0;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.sectors_per_unit = 4;
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("config JSON round trip") {
    ScenarioConfig c;
    c.seed = 42;
    c.area_km2 = 0.05;
    c.donor_rule = DonorRule::First;
    c.radio.carrier_ghz = 7.0;
    c.radio.bandwidth_mhz = 400.0;
    c.unit_positions = {{1.0, 2.0}};
    c.ue_positions = {{3.0, 4.0, true}, {5.0, 6.0, std::nullopt}};
    const nlohmann::json doc = scenario_config_to_json(c);
    ScenarioConfig back = scenario_config_from_json(doc);
    CHECK(scenario_config_to_json(back) == doc);
    CHECK(back.seed == 42);
    CHECK(back.radio.bandwidth_mhz == 400.0);
    CHECK(back.ue_positions[0].indoor == std::optional<bool>(true));
    CHECK_FALSE(back.ue_positions[1].indoor.has_value());

    auto shorthand = scenario_config_from_json(nlohmann::json{{"carrier_ghz", 7.0}, {"bandwidth_mhz", 400.0}});
    CHECK(shorthand.radio.carrier_ghz == 7.0);
    CHECK(code_of([] { scenario_config_from_json(nlohmann::json{{"donor_rule", "random"}}); }) == ErrorCode::ParseError);
    CHECK(code_of([] { scenario_config_from_json(nlohmann::json{{"seed", "x"}}); }) == ErrorCode::ParseError);
}

TEST_CASE("scenario instance uses the configured grid and noise") {
    ScenarioConfig c;
    c.seed = 5;
    c.power_levels = 4;
    c.noise_mw = 1e-9;
    Scenario s = generate_at_load(c, 0.3, 0);
    ProblemInstance inst = scenario_instance(c, s);
    CHECK(inst.noise_mw == 1e-9);
    REQUIRE(inst.frontend_count() == s.graph.frontends().size());
    const auto* grid = std::get_if<DiscretePower>(&inst.power[0]);
    REQUIRE(grid != nullptr);
    CHECK(grid->levels_mw.size() == 4);
    CHECK(grid->levels_mw.back() == c.radio.p_max_mw);
    CHECK(inst.power_model.p_max_w == doctest::Approx(c.radio.p_max_mw * 1e-3));
}
