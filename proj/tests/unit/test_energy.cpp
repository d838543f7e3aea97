#include <doctest.h>

#include "fixtures.hpp"
#include "iabopt/energy.hpp"
#include "iabopt/error.hpp"

using namespace iabopt;

TEST_CASE("frontend power branches") {
    PowerModelParams p;
    CHECK(frontend_power(p, 0.0, 0.7) == 78.0);
    CHECK(frontend_power(p, 6.3, 1.0) == doctest::Approx(128.38).epsilon(1e-12));
    CHECK(frontend_power(p, 6.3, 0.0) == 112.0);
    CHECK(frontend_power(p, 3.0, 0.5) == doctest::Approx(112.0 + 0.5 * 2.6 * 3.0));
    CHECK_THROWS_AS(frontend_power(p, 7.0, 0.5), Error);
    CHECK_THROWS_AS(frontend_power(p, 1.0, 1.5), Error);
    CHECK_THROWS_AS(frontend_power(p, -1.0, 0.5), Error);
}

TEST_CASE("frontend power is monotone in power and airtime") {
    PowerModelParams p;
    for (int i = 1; i < 12; ++i)
        for (int j = 0; j < 10; ++j) {
            const double tx = 0.5 * i, a = 0.1 * j;
            CHECK(frontend_power(p, tx + 0.5, a) >= frontend_power(p, tx, a));
            CHECK(frontend_power(p, tx, a + 0.1) >= frontend_power(p, tx, a));
        }
}

TEST_CASE("power model validation") {
    PowerModelParams p;
    p.p_sleep_w = 60.0;
    CHECK_THROWS_AS(validate(p), Error);
    p = {};
    p.delta_p = -1.0;
    CHECK_THROWS_AS(validate(p), Error);
}

TEST_CASE("network totals") {
    auto inst = testing::interfering_pair(20.0, 10.0, testing::step_table({{0.0, 100.0}}));
    const MeasurementGraph& g = inst.graph;
    PowerModelParams p;
    std::vector<double> airtime(g.edge_count(), 0.0);

    SUBCASE("all asleep") {
        EnergyReport r = total_power(g, std::vector<double>{0, 0}, std::vector<int>{0, 0}, airtime, p);
        CHECK(r.total_w == 2 * 2 * 39.0);
        CHECK(r.active_count == 0);
    }
    SUBCASE("one active frontend at half airtime") {
        airtime[*g.find_edge(2, 100)] = 0.3;
        airtime[*g.find_edge(2, 10)] = 0.2;
        EnergyReport r = total_power(g, std::vector<double>{6300, 0}, std::vector<int>{1, 0}, airtime, p);
        CHECK(r.per_frontend_w[0] == doctest::Approx(frontend_power(p, 6.3, 0.5)).epsilon(1e-12));
        CHECK(r.per_frontend_w[1] == 78.0);
        CHECK(r.total_w == doctest::Approx(r.per_frontend_w[0] + r.per_frontend_w[1]).epsilon(1e-9));
        CHECK(r.active_count == 1);
    }
    SUBCASE("unit adder") {
        p.unit_active_w = 10.0;
        EnergyReport r = total_power(g, std::vector<double>{6300, 6300}, std::vector<int>{1, 1}, airtime, p);
        CHECK(r.total_w == doctest::Approx(2 * 112.0 + 2 * 10.0));
    }
    SUBCASE("sleeping frontend that transmits") {
        CHECK_THROWS_AS(total_power(g, std::vector<double>{6300, 0}, std::vector<int>{0, 0}, airtime, p), Error);
    }
}

TEST_CASE("energy efficiency") {
    CHECK(energy_efficiency(0.0, 10.0) == 0.0);
    CHECK(energy_efficiency(5.0, 100.0) == doctest::Approx(0.05));
    CHECK(energy_efficiency(10.0, 100.0) == doctest::Approx(2 * energy_efficiency(5.0, 100.0)));
    try {
        energy_efficiency(5.0, 0.0);
        FAIL("expected ZeroPower");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroPower);
    }
}
