#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "iabopt/capacity.hpp"
#include "iabopt/error.hpp"

using namespace iabopt;

namespace {

std::vector<std::pair<double, double>> curve_samples() {
    std::ifstream in(std::string(IABOPT_TEST_DATA) + "/capacity_curve_100mhz_4l.txt");
    REQUIRE(in);
    std::vector<std::pair<double, double>> out;
    double x = 0, y = 0;
    while (in >> x >> y) out.emplace_back(x, y);
    return out;
}

}  // namespace

TEST_CASE("peak-rate formula") {
    Ts38306Params p;
    CHECK(ts38306_rate(p) == doctest::Approx(1226.925063).epsilon(1e-9));
    Ts38306Params full = p;
    full.overhead = 1.0;
    CHECK(ts38306_rate(full) == 0.0);
    Ts38306Params doubled = p;
    doubled.mimo_layers = 8;
    CHECK(ts38306_rate(doubled) == doctest::Approx(2.0 * ts38306_rate(p)));
    // Low-overhead variant, evaluated independently offline.
    Ts38306Params low = p;
    low.overhead = 0.14;
    low.symbol_duration_us = 35.68;
    CHECK(ts38306_rate(low) == doctest::Approx(2339.245795964).epsilon(1e-9));
    Ts38306Params bad = p;
    bad.modulation_order = 5;
    CHECK_THROWS_AS(ts38306_rate(bad), Error);
}

TEST_CASE("numerology") {
    Ts38306Params p = numerology_for(400.0, 4);
    CHECK(p.n_prb == 264);
    CHECK(p.symbol_duration_us == doctest::Approx(1000.0 / 112.0));
    CHECK_THROWS_AS(numerology_for(37.0, 4), Error);
}

TEST_CASE("default ladder") {
    CapacityTable t = default_table();
    validate(t);
    CHECK(t.size() == 25);
    CHECK(t.top().capacity_mbps == 1226.925063);
    CHECK(t.entries.front().capacity_mbps == 51.76899);
    CHECK(t.entries.front().sinr_threshold_db == doctest::Approx(-4.92).epsilon(0.002));
    CapacityTable wide = default_table(400.0, 4);
    CHECK(wide.top().capacity_mbps == doctest::Approx(1226.925063 * 3.868131868132).epsilon(1e-12));
    CHECK(wide.entries[3].sinr_threshold_db == t.entries[3].sinr_threshold_db);
}

TEST_CASE("default ladder reproduces every sampled point of the measured curve") {
    const auto samples = curve_samples();
    REQUIRE(samples.size() == 200);
    CapacityTable t = default_table();
    for (auto [x, y] : samples) CHECK(capacity_at_sinr_db(t, x).capacity_mbps == y);
    // Step onsets: each threshold sits between the last sample of the previous
    // plateau and the first sample of its own, so within one sampling pitch.
    const double pitch = samples[1].first - samples[0].first;
    for (const McsEntry& e : t.entries) {
        std::size_t first = 0;
        while (samples[first].second < e.capacity_mbps) ++first;
        CHECK(std::abs(samples[first].first - e.sinr_threshold_db) <= 0.35);
        CHECK(samples[first - 1].first < e.sinr_threshold_db);
        CHECK(pitch < 0.35);
    }
}

TEST_CASE("capacity_from_sinr") {
    CapacityTable t = default_table();
    McsLookup top = capacity_from_sinr(t, 1.0, 0.0);
    CHECK(top.level == 24);
    CHECK(top.capacity_mbps == 1226.925063);
    CHECK(capacity_at_sinr_db(t, 40.0).capacity_mbps == 1226.925063);
    McsLookup low = capacity_from_sinr(t, 0.1, 1.0);  // -10 dB
    CHECK_FALSE(low.level.has_value());
    CHECK(low.capacity_mbps == 0.0);
    CHECK_FALSE(capacity_from_sinr(t, 0.0, 0.0).level.has_value());
    // Exactly at a threshold the level is granted.
    const McsEntry& e = t.entries[7];
    CHECK(capacity_from_sinr(t, e.threshold_linear() * 2.0, 2.0).level == 7);
    CHECK(capacity_at_sinr_db(t, e.sinr_threshold_db).level == 7);
    CHECK(capacity_at_sinr_db(t, std::nextafter(e.sinr_threshold_db, -100.0)).level == 6);
}

TEST_CASE("threshold equivalence holds on a grid straddling every threshold") {
    CapacityTable t = default_table();
    for (const McsEntry& th : t.entries) {
        for (int k = -50; k <= 50; ++k) {
            const double s_db = th.sinr_threshold_db + k * 1e-3;
            const double interference = 3.7e-7;
            const double signal = interference * std::pow(10.0, s_db / 10.0);
            const McsLookup got = capacity_from_sinr(t, signal, interference);
            const bool unlocked = signal >= th.threshold_linear() * interference;
            CHECK((got.capacity_mbps >= th.capacity_mbps) == unlocked);
        }
    }
}

TEST_CASE("property: lookup is monotone in S and I") {
    CapacityTable t = default_table();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-12.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double s = std::pow(10.0, u(rng)), in = std::pow(10.0, u(rng)) * 1e-2;
        const double c = capacity_from_sinr(t, s, in).capacity_mbps;
        CHECK(capacity_from_sinr(t, s * 1.5, in).capacity_mbps >= c);
        CHECK(capacity_from_sinr(t, s, in * 1.5).capacity_mbps <= c);
    }
}

TEST_CASE("table csv") {
    CapacityTable t = default_table();
    CapacityTable back = parse_table_csv(table_to_csv(t));
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(back.entries[i].sinr_threshold_db == t.entries[i].sinr_threshold_db);
        CHECK(back.entries[i].capacity_mbps == t.entries[i].capacity_mbps);
    }
    auto code = [](std::string_view text) {
        try {
            parse_table_csv(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code("index,sinr_threshold_db,capacity_mbps\n0,1,10\n1,3,20\n2,2,30\n") == ErrorCode::NonMonotoneTable);
    CHECK(code("index,sinr_threshold_db,capacity_mbps\n0,1,10\n1,3,5\n") == ErrorCode::NonMonotoneTable);
    CHECK(code("index,sinr_threshold_db,capacity_mbps\n0,abc,10\n") == ErrorCode::BadRow);
    CHECK(code("0,1,10\n") == ErrorCode::BadRow);
    CHECK(code("index,sinr_threshold_db,capacity_mbps\n0,1\n") == ErrorCode::BadRow);
}
