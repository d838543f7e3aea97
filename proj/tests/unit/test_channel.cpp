#include <doctest.h>

#include <cmath>
#include <random>

#include "iabopt/channel.hpp"
#include "iabopt/error.hpp"
#include "iabopt/kernels.hpp"

using namespace iabopt;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

// Donor with three sectors at the origin, a relay at x = 200 facing back,
// one UE at x = 100 served by the 0-degree sector.
MeasurementGraph three_interferers() {
    std::vector<Node> nodes{{1, NodeKind::DonorDu, {0, 0, 10}, 0, false, 0.0},
                            {2, NodeKind::Frontend, {0, 0, 10}, 0, false, 0.0},
                            {3, NodeKind::Frontend, {0, 0, 10}, 0, false, 120.0},
                            {4, NodeKind::Frontend, {0, 0, 10}, 0, false, 240.0},
                            {10, NodeKind::MtDu, {200, 0, 10}, 1, false, 0.0},
                            {11, NodeKind::Frontend, {200, 0, 10}, 1, false, 180.0},
                            {100, NodeKind::Ue, {100, 0, 1.5}, -1, false, 0.0}};
    std::vector<Edge> edges{{1, 2, EdgeKind::Wired, 0, false},      {1, 3, EdgeKind::Wired, 0, false},
                            {1, 4, EdgeKind::Wired, 0, false},      {10, 11, EdgeKind::Wired, 0, false},
                            {2, 100, EdgeKind::Wireless, 90, true}, {3, 100, EdgeKind::Wireless, 91, true},
                            {4, 100, EdgeKind::Wireless, 92, true}, {11, 100, EdgeKind::Wireless, 95, false},
                            {2, 10, EdgeKind::Wireless, 80, true}};
    return build_graph(nodes, edges);
}

}  // namespace

TEST_CASE("UMi pathloss reference values") {
    const double d3d = 100.0;
    const double d2d = std::sqrt(d3d * d3d - 8.5 * 8.5);
    // Independent transcription evaluated offline: 32.4 + 21 log10(100) + 20 log10(3.6).
    CHECK(pathloss_umi(3.6, d2d, d3d, 10.0, 1.5, true) == doctest::Approx(85.5260500153).epsilon(1e-10));
    CHECK(pathloss_umi(3.6, d2d, d3d, 10.0, 1.5, false) == doctest::Approx(104.8492432663).epsilon(1e-10));
}

TEST_CASE("UMi pathloss monotonicity") {
    auto pl = [](double f, double d, bool los) { return pathloss_umi(f, d, std::hypot(d, 8.5), 10.0, 1.5, los); };
    CHECK(pl(3.6, 200, true) > pl(3.6, 50, true));
    CHECK(pl(7.0, 120, true) > pl(3.6, 120, true));
    CHECK(pl(7.0, 120, false) > pl(3.6, 120, false));
    // Past the breakpoint (216 m at 3.6 GHz) the slope steepens.
    CHECK(pl(3.6, 400, true) - pl(3.6, 300, true) > pl(3.6, 200, true) - pl(3.6, 150, true));
    for (double d = 20; d < 1000; d *= 1.3) CHECK(pl(3.6, d, false) >= pl(3.6, d, true));
}

TEST_CASE("UMi pathloss range checks") {
    CHECK_THROWS_AS(pathloss_umi(0.2, 100, 101, 10, 1.5, true), Error);
    CHECK_THROWS_AS(pathloss_umi(3.6, 0.0, 10, 10, 1.5, true), Error);
    CHECK_THROWS_AS(pathloss_umi(3.6, 100, 50, 10, 1.5, true), Error);
    try {
        pathloss_umi(3.6, 6000, 6001, 10, 1.5, true);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfModelRange);
    }
}

TEST_CASE("LOS probability") {
    CHECK(umi_los_probability(10.0) == 1.0);
    CHECK(umi_los_probability(18.0) == 1.0);
    CHECK(umi_los_probability(100.0) == doctest::Approx(0.18 + std::exp(-100.0 / 36.0) * 0.82));
    CHECK(umi_los_probability(300.0) < umi_los_probability(100.0));
}

TEST_CASE("O2I high-loss reference values") {
    CHECK(o2i_loss(3.6) == doctest::Approx(30.7510365448).epsilon(1e-10));
    CHECK(o2i_loss(7.0) == doctest::Approx(35.0183519846).epsilon(1e-10));
    CHECK(o2i_loss(7.0) > o2i_loss(3.6));
}

TEST_CASE("link_signal arithmetic") {
    CHECK(link_signal(1.0, 0.0, 0.0, 0.0) == 1.0);
    CHECK(link_signal(1000.0, 24.0, 0.0, 100.0) == doctest::Approx(2.511886e-05).epsilon(1e-6));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double p = 1.0 + 6000.0 * u(rng), gt = 30.0 * u(rng) - 5.0, gr = 20 * u(rng) - 18, pl = 60 + 80 * u(rng);
        CHECK(link_signal(2 * p, gt, gr, pl) == doctest::Approx(2 * link_signal(p, gt, gr, pl)).epsilon(1e-12));
    }
}

TEST_CASE("sinr_db limits") {
    CHECK(sinr_db(1.0, 0.0) == std::numeric_limits<double>::infinity());
    CHECK(sinr_db(0.0, 1.0) == -std::numeric_limits<double>::infinity());
    CHECK(sinr_db(10.0, 1.0) == doctest::Approx(10.0));
}

TEST_CASE("gain selection by sector") {
    RadioParams radio;
    Node fe{2, NodeKind::Frontend, {0, 0, 10}, 0, false, 120.0};
    CHECK(tx_gain_dbi(fe, {-10, 10, 0}, radio) == radio.g_tx_main_dbi);   // bearing 135
    CHECK(tx_gain_dbi(fe, {10, 0, 0}, radio) == radio.g_tx_side_dbi);     // bearing 0
    CHECK(tx_gain_dbi(fe, {-10, -0.1, 0}, radio) == radio.g_tx_side_dbi); // bearing about -179.4
    Node ue{5, NodeKind::Ue, {}, -1, false, 0.0};
    Node relay{6, NodeKind::MtDu, {}, 1, false, 0.0};
    CHECK(rx_gain_dbi(ue, true, radio) == radio.g_rx_main_dbi);
    CHECK(rx_gain_dbi(ue, false, radio) == radio.g_rx_side_dbi);
    CHECK(rx_gain_dbi(relay, true, radio) == radio.g_bh_rx_main_dbi);
}

TEST_CASE("link_interference") {
    RadioParams radio;
    MeasurementGraph g = three_interferers();
    const std::size_t victim = *g.find_edge(2, 100);
    // Ordinals follow ids: 2, 3, 4, 11.
    SUBCASE("everyone else off") {
        std::vector<double> p{radio.p_max_mw, 0, 0, 0};
        CHECK(link_interference(victim, p, g, radio) == 0.0);
    }
    SUBCASE("brute-force sum of the three terms") {
        std::vector<double> p{6300, 1000, 2000, 3000};
        const double side = radio.g_rx_side_dbi;
        const double expect = 1000 * db(radio.g_tx_side_dbi + side - 91) + 2000 * db(radio.g_tx_side_dbi + side - 92) +
                              3000 * db(radio.g_tx_main_dbi + side - 95);
        CHECK(link_interference(victim, p, g, radio) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(link_interference(victim, p, g, radio, 1e-9) == doctest::Approx(expect + 1e-9).epsilon(1e-12));
    }
    SUBCASE("superposition") {
        std::vector<double> a{0, 500, 0, 0}, b{0, 0, 0, 700}, ab{0, 500, 0, 700};
        CHECK(link_interference(victim, ab, g, radio) ==
              doctest::Approx(link_interference(victim, a, g, radio) + link_interference(victim, b, g, radio)));
    }
}

TEST_CASE("an interferer identical to the serving link gives I = S") {
    RadioParams radio;
    radio.g_rx_side_dbi = radio.g_rx_main_dbi;  // no rx discrimination
    std::vector<Node> nodes{{1, NodeKind::DonorDu, {0, 0, 10}, 0, false, 0.0},
                            {2, NodeKind::Frontend, {0, 0, 10}, 0, false, 0.0},
                            {10, NodeKind::MtDu, {200, 0, 10}, 1, false, 0.0},
                            {11, NodeKind::Frontend, {200, 0, 10}, 1, false, 180.0},
                            {100, NodeKind::Ue, {100, 0, 1.5}, -1, false, 0.0}};
    std::vector<Edge> edges{{1, 2, EdgeKind::Wired, 0, false}, {10, 11, EdgeKind::Wired, 0, false},
                            {2, 100, EdgeKind::Wireless, 90, true}, {11, 100, EdgeKind::Wireless, 90, true}};
    MeasurementGraph g = build_graph(nodes, edges);
    std::vector<double> p{4000, 4000};
    const double s = link_signal(4000, radio.g_tx_main_dbi, radio.g_rx_main_dbi, 90);
    CHECK(link_interference(*g.find_edge(2, 100), p, g, radio) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("gain matrix agrees with per-link arithmetic") {
    RadioParams radio;
    MeasurementGraph g = three_interferers();
    GainMatrix gm(g, radio);
    CHECK(gm.frontend_count() == 4);
    CHECK(gm.receiver_count() == 2);
    std::vector<double> p{6300, 1000, 2000, 3000};
    LinkRef ref = gm.link_ref(g, *g.find_edge(2, 100));
    CHECK(gm.signal_mw(ref, p) == doctest::Approx(link_signal(6300, 24, 0, 90)).epsilon(1e-12));
    CHECK(gm.interference_mw(ref, p) ==
          doctest::Approx(link_interference(*g.find_edge(2, 100), p, g, radio)).epsilon(1e-12));
    CHECK_THROWS_AS(gm.link_ref(g, *g.find_edge(1, 2)), Error);
}

TEST_CASE("parallel link budgets equal the serial reference") {
    RadioParams radio;
    MeasurementGraph g = three_interferers();
    GainMatrix gm(g, radio);
    std::vector<LinkRef> links;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (g.edge_at(e).kind == EdgeKind::Wireless) links.push_back(gm.link_ref(g, e));
    std::vector<double> p{6300, 1000, 0, 3000};
    std::vector<LinkBudget> a(links.size()), b(links.size());
    kernels::link_budgets(gm, links, p, 1e-9, a);
    kernels::serial::link_budgets(gm, links, p, 1e-9, b);
    for (std::size_t i = 0; i < links.size(); ++i) {
        CHECK(a[i].signal_mw == b[i].signal_mw);
        CHECK(a[i].interference_mw == b[i].interference_mw);
        CHECK(a[i].sinr_db == b[i].sinr_db);
        CHECK(a[i].interference_mw >= 1e-9);
    }
    std::vector<double> upper(4, 6300.0), ma(links.size()), mb(links.size());
    kernels::max_interference(gm, links, upper, 0.0, ma);
    kernels::serial::max_interference(gm, links, upper, 0.0, mb);
    for (std::size_t i = 0; i < links.size(); ++i) {
        CHECK(ma[i] == mb[i]);
        CHECK(ma[i] >= a[i].interference_mw - 1e-9);
    }
}
