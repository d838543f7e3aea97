#include <doctest.h>

#include "fixtures.hpp"
#include "iabopt/error.hpp"
#include "iabopt/milp.hpp"
#include "iabopt/oracle.hpp"
#include "random_instance.hpp"

using namespace iabopt;
using testing::step_table;

namespace {

CapacityTable two_steps() { return step_table({{0.0, 100.0}, {10.0, 300.0}}); }

std::vector<std::size_t> all_edges(const MeasurementGraph& g) {
    std::vector<std::size_t> out(g.edge_count());
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = e;
    return out;
}

std::vector<std::size_t> ue_nodes(const MeasurementGraph& g) { return {g.ues().begin(), g.ues().end()}; }

}  // namespace

TEST_CASE("max-min on a fixed tree: closed forms") {
    SUBCASE("single link") {
        ProblemInstance inst = testing::star_instance({15.0}, two_steps());
        std::vector<double> cap(inst.graph.edge_count(), 0.0);
        cap[*inst.graph.find_edge(2, 100)] = 420.0;
        CHECK(max_min_on_tree(inst.graph, all_edges(inst.graph), cap, ue_nodes(inst.graph)) ==
              doctest::Approx(420.0).epsilon(1e-12));
    }
    SUBCASE("100 / 300 Mbps from one frontend") {
        ProblemInstance inst = testing::star_instance({5.0, 15.0}, two_steps());
        std::vector<double> cap(inst.graph.edge_count(), 0.0);
        cap[*inst.graph.find_edge(2, 100)] = 100.0;
        cap[*inst.graph.find_edge(2, 101)] = 300.0;
        const double z = max_min_on_tree(inst.graph, all_edges(inst.graph), cap, ue_nodes(inst.graph));
        CHECK(std::abs(z - 75.0) <= 1e-9);
        CHECK(std::abs(z - 1.0 / (1.0 / 100.0 + 1.0 / 300.0)) <= 1e-9);
    }
    SUBCASE("symmetric C / C") {
        ProblemInstance inst = testing::star_instance({15.0, 15.0}, two_steps());
        std::vector<double> cap(inst.graph.edge_count(), 0.0);
        cap[*inst.graph.find_edge(2, 100)] = 250.0;
        cap[*inst.graph.find_edge(2, 101)] = 250.0;
        CHECK(std::abs(max_min_on_tree(inst.graph, all_edges(inst.graph), cap, ue_nodes(inst.graph)) - 125.0) <= 1e-9);
    }
    SUBCASE("chain with equal hops") {
        ProblemInstance inst = testing::chain_instance(15.0, two_steps());
        std::vector<double> cap(inst.graph.edge_count(), 0.0);
        cap[*inst.graph.find_edge(2, 10)] = 300.0;
        cap[*inst.graph.find_edge(11, 100)] = 300.0;
        CHECK(std::abs(max_min_on_tree(inst.graph, all_edges(inst.graph), cap, ue_nodes(inst.graph)) - 300.0) <= 1e-9);
    }
    SUBCASE("zero-capacity loaded link") {
        ProblemInstance inst = testing::star_instance({15.0}, two_steps());
        std::vector<double> cap(inst.graph.edge_count(), 0.0);
        try {
            max_min_on_tree(inst.graph, all_edges(inst.graph), cap, ue_nodes(inst.graph));
            FAIL("expected ZeroCapacityLink");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ZeroCapacityLink);
        }
    }
}

TEST_CASE("bisection is feasibility-tight") {
    ProblemInstance inst = testing::star_instance({5.0, 15.0, 25.0}, default_table());
    std::vector<double> cap(inst.graph.edge_count(), 0.0);
    const double c[] = {137.0, 411.0, 923.0};
    for (int i = 0; i < 3; ++i) cap[*inst.graph.find_edge(2, 100 + i)] = c[i];
    const double z = max_min_on_tree(inst.graph, all_edges(inst.graph), cap, ue_nodes(inst.graph));
    auto load = [&](double zz) { return zz / c[0] + zz / c[1] + zz / c[2]; };
    CHECK(load(z - 1e-6) <= 1.0);
    CHECK(load(z + 1e-6) > 1.0);
}

TEST_CASE("enumeration: single link equals capacity") {
    ProblemInstance inst = testing::star_instance({15.0}, two_steps());
    OracleResult r = enumerate_optimal_throughput(inst);
    CHECK(r.value == doctest::Approx(300.0).epsilon(1e-9));
    CHECK(r.configurations == 1);
}

TEST_CASE("enumeration: parallel and serial agree") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        ProblemInstance inst = testing::random_small_instance(seed);
        const OracleResult a = enumerate_optimal_throughput(inst);
        const OracleResult b = serial::enumerate_optimal_throughput(inst);
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
        CHECK(a.configurations == b.configurations);
        const OracleResult c = enumerate_optimal_energy(inst);
        const OracleResult d = serial::enumerate_optimal_energy(inst);
        CHECK(c.value == doctest::Approx(d.value).epsilon(1e-12));
    }
}

TEST_CASE("energy enumeration edge cases") {
    SUBCASE("zero demands") {
        ProblemInstance inst = testing::star_instance({15.0, 5.0}, two_steps(), 0.0);
        for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2);
        CHECK(enumerate_optimal_energy(inst).value == doctest::Approx(78.0));
    }
    SUBCASE("demand above every capacity") {
        ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 1000.0);
        for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2);
        try {
            enumerate_optimal_energy(inst);
            FAIL("expected NoFeasible");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NoFeasible);
        }
    }
    SUBCASE("continuous plans are rejected") {
        ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 1.0);
        inst.power[0] = ContinuousPower{};
        CHECK_THROWS_AS(enumerate_optimal_throughput(inst), Error);
    }
}

TEST_CASE("enumeration guard") {
    ProblemInstance inst = testing::interfering_pair(20.0, 3.0, default_table(), 1.0);
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2000);
    CHECK(enumeration_size(inst, ProblemKind::Throughput) > kEnumerationGuard);
    try {
        enumerate_optimal_throughput(inst);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("mutual interference: the oracle switches a frontend off") {
    // Interference 1 dB under the signal leaves both UEs below the first step;
    // with one frontend silent the other serves both.
    ProblemInstance inst = testing::interfering_pair(20.0, 1.0, step_table({{3.0, 100.0}, {15.0, 300.0}}));
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2);
    OracleResult r = enumerate_optimal_throughput(inst);
    CHECK(r.value > 0.0);
    const int on = (r.power_mw[0] > 0) + (r.power_mw[1] > 0);
    CHECK(on == 1);
}

TEST_CASE("validate_solution on pipeline and hand-built solutions") {
    ProblemInstance inst = testing::star_instance({5.0, 15.0}, two_steps());
    auto backend = make_default_backend();
    NetworkSolution sol = solve_problem(inst, ProblemKind::Throughput, {}, *backend);
    ValidationReport ok = validate_solution(inst, sol);
    CHECK(ok.ok);
    CHECK(ok.violations.empty());
    CHECK(ok.recomputed_objective == doctest::Approx(75.0).epsilon(1e-6));

    SUBCASE("airtime over budget") {
        NetworkSolution bad = sol;
        bad.airtime[*inst.graph.find_edge(2, 100)] += 0.2;
        ValidationReport r = validate_solution(inst, bad);
        CHECK_FALSE(r.ok);
        REQUIRE(r.has(ViolationRule::AirtimeBudget));
        for (const Violation& v : r.violations)
            if (v.rule == ViolationRule::AirtimeBudget) CHECK(v.magnitude == doctest::Approx(0.2).epsilon(1e-6));
    }
    SUBCASE("claimed level above the recomputed SINR") {
        NetworkSolution bad = sol;
        bad.mcs_level[*inst.graph.find_edge(2, 100)] = 1;
        CHECK(validate_solution(inst, bad).has(ViolationRule::CapacityOverclaim));
    }
    SUBCASE("power outside the plan") {
        NetworkSolution bad = sol;
        bad.power_mw[0] = 17.0;
        CHECK(validate_solution(inst, bad).has(ViolationRule::PowerBounds));
    }
    SUBCASE("objective mismatch") {
        NetworkSolution bad = sol;
        bad.objective = 80.0;
        CHECK(validate_solution(inst, bad).has(ViolationRule::ObjectiveMismatch));
    }
    SUBCASE("broken tree") {
        NetworkSolution bad = sol;
        bad.chosen_edges.erase(bad.chosen_edges.begin());
        CHECK_FALSE(validate_solution(inst, bad).ok);
    }
}
