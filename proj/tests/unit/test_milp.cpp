#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "iabopt/error.hpp"
#include "iabopt/kernels.hpp"
#include "iabopt/milp.hpp"
#include "iabopt/oracle.hpp"

using namespace iabopt;
using testing::step_table;

namespace {

CapacityTable two_steps() { return step_table({{0.0, 100.0}, {10.0, 300.0}}); }

NetworkSolution solve_thr(const ProblemInstance& inst) {
    auto backend = make_default_backend();
    return solve_problem(inst, ProblemKind::Throughput, {}, *backend);
}

NetworkSolution solve_energy(const ProblemInstance& inst) {
    auto backend = make_default_backend();
    return solve_problem(inst, ProblemKind::Energy, {}, *backend);
}

}  // namespace

TEST_CASE("single link: Z equals the link capacity") {
    ProblemInstance inst = testing::star_instance({20.0}, two_steps());
    NetworkSolution sol = solve_thr(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(300.0).epsilon(1e-9));
    const std::size_t e = *inst.graph.find_edge(2, 100);
    CHECK(sol.airtime[e] == doctest::Approx(1.0));
    // Capacity coupling is tight on the only link.
    CHECK(sol.mcs_level[e] == 1);
    CHECK(sol.link_rate_mbps[e] == doctest::Approx(sol.airtime[e] * 300.0));
    CHECK(validate_solution(inst, sol).ok);
}

TEST_CASE("one frontend, capacities 100 and 300: Z = 75") {
    ProblemInstance inst = testing::star_instance({5.0, 15.0}, two_steps());
    NetworkSolution sol = solve_thr(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(75.0).epsilon(1e-9));
    CHECK(sol.airtime[*inst.graph.find_edge(2, 100)] == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(sol.airtime[*inst.graph.find_edge(2, 101)] == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("symmetric pair: Z = C/2") {
    ProblemInstance inst = testing::star_instance({15.0, 15.0}, two_steps());
    CHECK(solve_thr(inst).objective == doctest::Approx(150.0).epsilon(1e-9));
}

TEST_CASE("relay chain: hops use separate budgets") {
    ProblemInstance inst = testing::chain_instance(15.0, two_steps());
    NetworkSolution sol = solve_thr(inst);
    CHECK(sol.objective == doctest::Approx(300.0).epsilon(1e-9));
    CHECK(sol.chosen_edges.size() == 4);
    CHECK(validate_tree(inst.graph, sol.chosen_edges, inst.commodities).ok);
}

TEST_CASE("extracted levels agree with the direct SINR lookup at fixed power") {
    ProblemInstance inst = testing::star_instance({3.0, 12.0, 25.0}, default_table());
    NetworkSolution sol = solve_thr(inst);
    REQUIRE(sol.has_values());
    const auto truth = evaluate_links(inst, sol.power_mw);
    for (auto e : sol.chosen_edges) {
        if (inst.graph.edge_at(e).kind != EdgeKind::Wireless) continue;
        // The max-min optimum needs every link at its best level.
        CHECK(sol.mcs_level[e] == *truth[e].level);
        CHECK(sol.link_rate_mbps[e] <= sol.airtime[e] * truth[e].capacity_mbps + 1e-6);
    }
    for (std::size_t v = 0; v < inst.graph.node_count(); ++v) {
        double used = 0.0;
        for (auto e : inst.graph.in_edges(v)) used += sol.airtime[e];
        for (auto e : inst.graph.out_edges(v)) used += sol.airtime[e];
        CHECK(used <= 1.0 + 1e-6);
    }
}

TEST_CASE("throughput model matches the oracle under mutual interference") {
    ProblemInstance inst = testing::interfering_pair(20.0, 3.0, default_table());
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2);
    NetworkSolution sol = solve_thr(inst);
    const OracleResult o = enumerate_optimal_throughput(inst);
    CHECK(sol.objective == doctest::Approx(o.value).epsilon(1e-6));
}

TEST_CASE("energy: zero demands sleep everything") {
    ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 0.0);
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 3);
    NetworkSolution sol = solve_energy(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.activated_count() == 0);
    CHECK(sol.objective == doctest::Approx(2 * 39.0).epsilon(1e-9));
    CHECK(sol.p_total_w == doctest::Approx(78.0));
}

TEST_CASE("energy: single UE on the cheapest level") {
    ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 50.0);
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 3);
    NetworkSolution sol = solve_energy(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.activated_count() == 1);
    // Half power still clears the 10 dB step: airtime 50/300 at 3.15 W.
    CHECK(sol.power_mw[0] == doctest::Approx(3150.0));
    CHECK(sol.objective == doctest::Approx(112.0 + 2.6 * 3.15 / 6.0).epsilon(1e-9));
    CHECK(sol.objective == doctest::Approx(total_power(inst.graph, sol, inst.power_model).total_w).epsilon(1e-6));
    CHECK(sol.objective == doctest::Approx(enumerate_optimal_energy(inst).value).epsilon(1e-6));
}

TEST_CASE("energy: demand above every capacity is infeasible") {
    ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 400.0);
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 3);
    CHECK(solve_energy(inst).status == SolveStatus::Infeasible);
}

TEST_CASE("model errors") {
    ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 10.0);
    SUBCASE("no commodities") {
        ProblemInstance empty = inst;
        empty.commodities.clear();
        try {
            build_throughput_model(empty);
            FAIL("expected EmptyCommodities");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyCommodities);
        }
        // The energy model accepts it: empty tree, sleep baseline.
        for (auto& plan : empty.power) plan = power_grid(empty.radio.p_max_mw, 2);
        NetworkSolution sol = solve_energy(empty);
        CHECK(sol.chosen_edges.empty());
        CHECK(sol.p_total_w == doctest::Approx(78.0));
    }
    SUBCASE("continuous power in the energy model") {
        inst.power[0] = ContinuousPower{};
        try {
            build_energy_model(inst);
            FAIL("expected UnsupportedMode");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnsupportedMode);
        }
    }
    SUBCASE("negative demand") {
        inst.commodities[0].demand_mbps = -1.0;
        try {
            build_energy_model(inst);
            FAIL("expected DemandMissing");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DemandMissing);
        }
    }
}

TEST_CASE("continuous throughput power picks the best interference trade-off") {
    ProblemInstance inst = testing::interfering_pair(20.0, 3.0, default_table());
    for (auto& plan : inst.power) plan = ContinuousPower{};
    NetworkSolution cont = solve_thr(inst);
    REQUIRE(cont.has_values());
    CHECK(validate_solution(inst, cont).ok);
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2);
    // The continuous domain contains the two-level grid.
    CHECK(cont.objective >= enumerate_optimal_throughput(inst).value * (1.0 - 1e-6));
}

TEST_CASE("big-M bounds") {
    SUBCASE("no interferer and no noise") {
        ProblemInstance inst = testing::star_instance({15.0}, two_steps());
        inst.noise_mw = 0.0;
        auto m = compute_big_m(inst, *inst.graph.find_edge(2, 100));
        REQUIRE(m.size() == 2);
        for (const BigM& b : m) CHECK(b.lower == 0.0);
        CHECK(m[0].upper == doctest::Approx(inst.gains->serving(0, 0) * inst.radio.p_max_mw));
    }
    SUBCASE("an interferer never lowers the bound") {
        ProblemInstance inst = testing::interfering_pair(20.0, 3.0, default_table());
        const std::size_t e = *inst.graph.find_edge(2, 100);
        inst.power[1] = FixedPower{0.0};
        auto quiet = compute_big_m(inst, e);
        inst.power[1] = FixedPower{inst.radio.p_max_mw};
        auto loud = compute_big_m(inst, e);
        for (std::size_t i = 0; i < quiet.size(); ++i) CHECK(loud[i].lower > quiet[i].lower);
        SolverOptions capped;
        capped.big_m_cap = 1e-12;
        for (const BigM& b : compute_big_m(inst, e, capped)) CHECK(b.upper <= 1e-12);
    }
    SUBCASE("bounds dominate every sampled assignment") {
        ProblemInstance inst = testing::interfering_pair(20.0, 3.0, default_table());
        for (auto& plan : inst.power) plan = ContinuousPower{};
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.0, inst.radio.p_max_mw);
        for (std::size_t e = 0; e < inst.graph.edge_count(); ++e) {
            if (inst.graph.edge_at(e).kind != EdgeKind::Wireless) continue;
            const auto m = compute_big_m(inst, e);
            const LinkRef ref = inst.gains->link_ref(inst.graph, e);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<double> p{u(rng), u(rng)};
                LinkBudget b;
                kernels::serial::link_budgets(*inst.gains, std::span(&ref, 1), p, inst.noise_mw, std::span(&b, 1));
                for (std::size_t i = 0; i < m.size(); ++i) {
                    const double gap = b.signal_mw - inst.table.entries[i].threshold_linear() * b.interference_mw;
                    CHECK(m[i].upper >= gap);
                    CHECK(m[i].lower >= -gap);
                }
            }
        }
    }
}

TEST_CASE("indicator chain is monotone in extracted solutions") {
    ProblemInstance inst = testing::interfering_pair(18.0, 6.0, default_table(), 20.0);
    for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 3);
    auto backend = make_default_backend();
    for (ProblemKind kind : {ProblemKind::Throughput, ProblemKind::Energy}) {
        BuiltModel model =
            kind == ProblemKind::Throughput ? build_throughput_model(inst) : build_energy_model(inst);
        RawSolution raw = solve(model.ir, {}, *backend);
        REQUIRE(raw.has_solution);
        for (std::size_t e = 0; e < inst.graph.edge_count(); ++e)
            for (std::size_t i = 1; i < model.layout.phi[e].size(); ++i)
                CHECK(raw.values[model.layout.phi[e][i]] <= raw.values[model.layout.phi[e][i - 1]] + 1e-6);
        NetworkSolution sol = extract_solution(raw, model, inst);
        CHECK(validate_solution(inst, sol).ok);
        if (kind == ProblemKind::Energy)
            CHECK(sol.objective == doctest::Approx(total_power(inst.graph, sol, inst.power_model).total_w).epsilon(1e-6));
    }
}

TEST_CASE("extraction rejects a tampered raw solution") {
    ProblemInstance inst = testing::star_instance({5.0}, two_steps());
    BuiltModel model = build_throughput_model(inst);
    auto backend = make_default_backend();
    RawSolution raw = solve(model.ir, {}, *backend);
    REQUIRE(raw.has_solution);
    // Claim the 10 dB level on a 5 dB link.
    const std::size_t e = *inst.graph.find_edge(2, 100);
    raw.values[model.layout.phi[e][1]] = 1.0;
    try {
        extract_solution(raw, model, inst);
        FAIL("expected ExtractionMismatch");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::ExtractionMismatch);
    }
}
