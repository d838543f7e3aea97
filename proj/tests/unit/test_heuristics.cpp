#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "iabopt/error.hpp"
#include "iabopt/heuristics.hpp"
#include "iabopt/milp.hpp"
#include "iabopt/oracle.hpp"
#include "random_instance.hpp"

using namespace iabopt;
using testing::step_table;

namespace {

CapacityTable two_steps() { return step_table({{0.0, 100.0}, {10.0, 300.0}}); }

double solve_fixed(const ProblemInstance& inst, const std::vector<double>& power, SolverBackend& backend) {
    ProblemInstance work = inst;
    for (std::size_t r = 0; r < power.size(); ++r) work.power[r] = FixedPower{power[r]};
    NetworkSolution sol = solve_problem(work, ProblemKind::Throughput, {}, backend);
    return sol.has_values() ? sol.objective : 0.0;
}

bool feasible_at(const ProblemInstance& inst, int k, SolverBackend& backend) {
    try {
        selective_reduction(inst, {k, k, 1}, ProblemKind::Throughput, {}, backend);
        return true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoFeasibleWithinKmax) throw;
        return false;
    }
}

int max_in_degree(const MeasurementGraph& g) {
    std::size_t d = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) d = std::max(d, g.in_degree(v));
    return static_cast<int>(d);
}

// Seven frontends over three units, all reaching UE 100. Link i of kFanIds
// sits at 20 - i dB, so the ranking follows the list order. Relays hang off
// frontend 2 over backhaul.
constexpr NodeId kFanIds[] = {11, 12, 13, 21, 3, 4, 2};

ProblemInstance fan_in(const std::vector<NodeId>& silent) {
    const RadioParams radio;
    auto fe = [](NodeId id, int unit) { return Node{id, NodeKind::Frontend, {0, 0, 10}, unit, false, 0.0}; };
    std::vector<Node> nodes{{1, NodeKind::DonorDu, {0, 0, 10}, 0, false, 0.0},
                            {10, NodeKind::MtDu, {0, 50, 10}, 1, false, 0.0},
                            {20, NodeKind::MtDu, {0, -50, 10}, 2, false, 0.0},
                            {100, NodeKind::Ue, {100, 0, 1.5}, -1, false, 0.0},
                            fe(2, 0), fe(3, 0), fe(4, 0), fe(11, 1), fe(12, 1), fe(13, 1), fe(21, 2)};
    const double pl_bh = testing::pathloss_for_sinr(40.0, radio.p_max_mw, radio.g_tx_side_dbi,
                                                    radio.g_bh_rx_main_dbi, testing::kNoiseMw);
    std::vector<Edge> edges{{1, 2, EdgeKind::Wired, 0.0, false},   {1, 3, EdgeKind::Wired, 0.0, false},
                            {1, 4, EdgeKind::Wired, 0.0, false},   {10, 11, EdgeKind::Wired, 0.0, false},
                            {10, 12, EdgeKind::Wired, 0.0, false}, {10, 13, EdgeKind::Wired, 0.0, false},
                            {20, 21, EdgeKind::Wired, 0.0, false}, {2, 10, EdgeKind::Wireless, pl_bh, true},
                            {2, 20, EdgeKind::Wireless, pl_bh, true}};
    for (int i = 0; i < 7; ++i) {
        const double pl = testing::pathloss_for_sinr(20.0 - i, radio.p_max_mw, radio.g_tx_main_dbi,
                                                     radio.g_rx_main_dbi, testing::kNoiseMw);
        edges.push_back({kFanIds[i], 100, EdgeKind::Wireless, pl, true});
    }
    MeasurementGraph g = build_graph(std::move(nodes), std::move(edges));
    auto com = make_commodities(g, 0.0);
    ProblemInstance inst = make_instance(std::move(g), std::move(com), radio, two_steps(), PowerModelParams{});
    inst.noise_mw = testing::kNoiseMw;
    for (NodeId id : silent) inst.power[*inst.graph.frontend_ordinal(inst.graph.index_of(id))] = FixedPower{0.0};
    return inst;
}

}  // namespace

TEST_CASE("local search: single frontend and single UE") {
    ProblemInstance inst = testing::star_instance({15.0}, two_steps());
    inst.power[0] = power_grid(inst.radio.p_max_mw, 2);
    auto backend = make_default_backend();
    HeuristicResult r = local_search_throughput(inst, {}, *backend);
    CHECK(r.solution.objective == doctest::Approx(300.0).epsilon(1e-9));
    CHECK(r.phase1_sweeps <= 2);
    CHECK(validate_solution(inst, r.solution).ok);
}

TEST_CASE("local search: interfering pair never ends below its start") {
    auto backend = make_default_backend();
    for (double cross : {1.0, 3.0, 8.0}) {
        ProblemInstance inst = testing::interfering_pair(20.0, cross, step_table({{3.0, 100.0}, {15.0, 300.0}}));
        for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 2);
        HeuristicResult r = local_search_throughput(inst, {}, *backend);
        REQUIRE_FALSE(r.state.log.empty());
        CHECK(r.solution.objective >= r.state.log.front().objective);
        const OracleResult best = enumerate_optimal_throughput(inst);
        CHECK(r.solution.objective <= best.value * (1 + 1e-6) + 1e-9);
        CHECK(validate_solution(inst, r.solution).ok);
    }
}

TEST_CASE("local search on random instances: sound, bounded by the oracle, certified") {
    auto backend = make_default_backend();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        CAPTURE(seed);
        ProblemInstance inst = testing::random_small_instance(seed);
        HeuristicResult thr = local_search_throughput(inst, {}, *backend);
        CHECK(validate_solution(inst, thr.solution).ok);
        const double opt = enumerate_optimal_throughput(inst).value;
        CHECK(thr.solution.objective <= opt * (1 + 1e-6) + 1e-9);
        for (std::size_t i = 1; i < thr.state.log.size(); ++i)
            CHECK(thr.state.log[i].objective >= thr.state.log[i - 1].objective);

        // Phase-1 certificate: no single toggle strictly improves.
        for (std::size_t r = 0; r < inst.frontend_count(); ++r) {
            const auto c = power_candidates(inst.power[r], inst.radio.p_max_mw);
            const double lo = *std::min_element(c.begin(), c.end());
            const double hi = *std::max_element(c.begin(), c.end());
            if (lo == hi) continue;
            std::vector<double> trial = thr.phase1_power;
            trial[r] = trial[r] == hi ? lo : hi;
            CHECK(solve_fixed(inst, trial, *backend) <=
                  thr.phase1_objective + 1e-6 * std::max(1.0, thr.phase1_objective));
        }

        try {
            HeuristicResult en = local_search_energy(inst, {}, *backend);
            CHECK(validate_solution(inst, en.solution).ok);
            CHECK(en.solution.objective >= enumerate_optimal_energy(inst).value * (1 - 1e-6) - 1e-9);
            for (std::size_t i = 1; i < en.state.log.size(); ++i)
                CHECK(en.state.log[i].objective <= en.state.log[i - 1].objective);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DemandExceedsMaxMin);
        }
    }
}

TEST_CASE("energy search edge cases") {
    auto backend = make_default_backend();
    SUBCASE("zero demands sleep everything") {
        ProblemInstance inst = testing::interfering_pair(20.0, 3.0, default_table(), 0.0);
        for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 3);
        HeuristicResult r = local_search_energy(inst, {}, *backend);
        CHECK(r.solution.activated_count() == 0);
        CHECK(r.solution.objective == doctest::Approx(2 * inst.power_model.n_trx * inst.power_model.p_sleep_w));
        CHECK(r.state.log.size() == 1);
    }
    SUBCASE("demand equal to the max-min rate") {
        ProblemInstance inst = testing::star_instance({15.0}, two_steps(), 300.0);
        inst.power[0] = power_grid(inst.radio.p_max_mw, 2);
        try {
            local_search_energy(inst, {}, *backend);
            FAIL("expected DemandExceedsMaxMin");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DemandExceedsMaxMin);
        }
    }
    SUBCASE("small grid instance matches the oracle or is locally optimal") {
        ProblemInstance inst = testing::interfering_pair(20.0, 8.0, default_table(), 20.0);
        for (auto& plan : inst.power) plan = power_grid(inst.radio.p_max_mw, 3);
        HeuristicResult r = local_search_energy(inst, {}, *backend);
        const double opt = enumerate_optimal_energy(inst).value;
        CHECK(r.solution.objective >= opt - 1e-6 * opt);
        CHECK(validate_solution(inst, r.solution).ok);
        if (r.solution.objective > opt * (1 + 1e-6)) {
            // Local-optimality certificate: no single frontend move lowers energy.
            for (std::size_t f = 0; f < inst.frontend_count(); ++f) {
                ProblemInstance work = inst;
                for (std::size_t g = 0; g < inst.frontend_count(); ++g)
                    if (g != f) work.power[g] = FixedPower{r.state.curr_best_sol[g]};
                NetworkSolution s = solve_problem(work, ProblemKind::Energy, {}, *backend);
                if (s.has_values()) CHECK(s.objective >= r.solution.objective - 1e-6 * r.solution.objective);
            }
        }
    }
}

TEST_CASE("rank_edges") {
    SUBCASE("metric arithmetic") {
        ProblemInstance inst = testing::star_instance({0.0}, two_steps());
        const std::size_t e = *inst.graph.find_edge(2, 100);
        std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
        edges[e].pathloss_db = 100.0;
        MeasurementGraph g = build_graph({inst.graph.nodes().begin(), inst.graph.nodes().end()}, edges);
        auto ranked = rank_edges(g, inst.radio);
        REQUIRE(ranked.size() == 1);
        CHECK(ranked[0].metric_db == doctest::Approx(-76.0).epsilon(1e-12));
    }
    SUBCASE("ties ordered by ids") {
        ProblemInstance inst = testing::star_instance({10.0, 10.0, 10.0}, two_steps());
        auto ranked = rank_edges(inst.graph, inst.radio);
        REQUIRE(ranked.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(inst.graph.edge_at(ranked[i].edge).dst == NodeId(100 + i));
    }
    SUBCASE("shuffled edge order gives the same ranking") {
        ProblemInstance inst = testing::random_small_instance(11);
        const auto base = rank_edges(inst.graph, inst.radio);
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
            std::shuffle(edges.begin(), edges.end(), rng);
            MeasurementGraph g = build_graph({inst.graph.nodes().begin(), inst.graph.nodes().end()}, edges);
            const auto r = rank_edges(g, inst.radio);
            REQUIRE(r.size() == base.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                const Edge& a = g.edge_at(r[i].edge);
                const Edge& b = inst.graph.edge_at(base[i].edge);
                CHECK(std::pair(a.src, a.dst) == std::pair(b.src, b.dst));
                CHECK(r[i].metric_db == base[i].metric_db);
            }
        }
    }
}

TEST_CASE("prune_graph") {
    ProblemInstance inst = fan_in({});
    const std::size_t ue = inst.graph.index_of(100);
    CHECK(inst.graph.in_degree(ue) == 7);
    MeasurementGraph p5 = prune_graph(inst.graph, 5, inst.radio);
    CHECK(p5.in_degree(p5.index_of(100)) == 5);
    // The five strongest links survive; wired and backhaul edges are all kept.
    for (int i = 0; i < 7; ++i) CHECK(p5.find_edge(kFanIds[i], 100).has_value() == (i < 5));
    for (const Edge& e : inst.graph.edges())
        if (e.dst != 100) CHECK(p5.find_edge(e.src, e.dst).has_value());
    CHECK(prune_graph(inst.graph, 7, inst.radio) == inst.graph);
    CHECK_THROWS_AS(prune_graph(inst.graph, 0, inst.radio), Error);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ProblemInstance r = testing::random_small_instance(seed);
        const int dmax = max_in_degree(r.graph);
        CHECK(prune_graph(r.graph, dmax, r.radio) == r.graph);
        for (int k = 1; k <= dmax; ++k) {
            MeasurementGraph p = prune_graph(r.graph, k, r.radio);
            for (const Edge& e : p.edges()) {
                auto orig = r.graph.find_edge(e.src, e.dst);
                REQUIRE(orig.has_value());
                CHECK(r.graph.edge_at(*orig) == e);
            }
            for (std::size_t u : r.graph.ues()) CHECK(p.in_degree(u) >= 1);
        }
    }
}

TEST_CASE("selective reduction") {
    auto backend = make_default_backend();
    SUBCASE("k0 at the max in-degree equals the exact solve") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            ProblemInstance inst = testing::random_small_instance(seed);
            const int dmax = max_in_degree(inst.graph);
            ReductionResult sr = selective_reduction(inst, {dmax, dmax, 1}, ProblemKind::Throughput, {}, *backend);
            NetworkSolution exact = solve_problem(inst, ProblemKind::Throughput, {}, *backend);
            CHECK(sr.solution.objective == doctest::Approx(exact.objective).epsilon(1e-6));
        }
    }
    SUBCASE("only the sixth-ranked link carries traffic") {
        ProblemInstance inst = fan_in({11, 12, 13, 21, 3, 2});
        CHECK(enumerate_optimal_throughput(with_graph(inst, prune_graph(inst.graph, 5, inst.radio))).value == 0.0);
        CHECK(enumerate_optimal_throughput(inst).value > 0.0);
        ReductionResult sr = selective_reduction(inst, {5, 10, 1}, ProblemKind::Throughput, {}, *backend);
        CHECK(sr.k == 6);
        REQUIRE(sr.attempts.size() == 2);
        CHECK(sr.solution.objective == doctest::Approx(300.0).epsilon(1e-6));
        CHECK(validate_solution(inst, sr.solution).ok);
        try {
            selective_reduction(inst, {1, 5, 2}, ProblemKind::Throughput, {}, *backend);
            FAIL("expected NoFeasibleWithinKmax");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NoFeasibleWithinKmax);
        }
    }
    SUBCASE("never above the exact optimum; feasibility monotone in k") {
        for (std::uint64_t seed = 20; seed < 30; ++seed) {
            CAPTURE(seed);
            ProblemInstance inst = testing::random_small_instance(seed);
            const double exact = solve_problem(inst, ProblemKind::Throughput, {}, *backend).objective;
            bool seen = false;
            for (int k = 1; k <= max_in_degree(inst.graph); ++k) {
                const bool f = feasible_at(inst, k, *backend);
                CHECK((!seen || f));
                seen = seen || f;
                if (f) {
                    ReductionResult sr = selective_reduction(inst, {k, k, 1}, ProblemKind::Throughput, {}, *backend);
                    CHECK(sr.solution.objective <= exact * (1 + 1e-6) + 1e-9);
                }
            }
            CHECK(seen);
        }
    }
    CHECK_THROWS_AS(validate(PruneParams{0, 5, 1}), Error);
    CHECK_THROWS_AS(validate(PruneParams{6, 5, 1}), Error);
}

TEST_CASE("search log CSV and evolution statistics") {
    std::vector<SearchLogEntry> log{{1, 0.5, 253.14}, {4, 12.0, 300.0}, {9, 40.25, 365.0}, {12, 61.0, 366.91}};
    const std::string csv = search_log_csv(log);
    CHECK(csv.rfind("iter,timestamp_s,objective\n", 0) == 0);
    auto back = parse_search_log_csv(csv);
    REQUIRE(back.size() == log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(back[i].iter == log[i].iter);
        CHECK(back[i].timestamp_s == log[i].timestamp_s);
        CHECK(back[i].objective == log[i].objective);
    }
    CHECK_THROWS_AS(parse_search_log_csv("iter,objective\n1,2\n"), Error);
    CHECK_THROWS_AS(parse_search_log_csv("iter,timestamp_s,objective\n1;2;3\n"), Error);

    EvolutionStats s = evolution_stats(log);
    CHECK(s.initial == 253.14);
    CHECK(s.final_value == 366.91);
    CHECK(s.improvement_pct == doctest::Approx((366.91 - 253.14) / 253.14 * 100.0).epsilon(1e-12));
    // 365.0 is within 1 % of 366.91, so the run was near-final at 40.25 s.
    CHECK(s.time_to_near_final_s == 40.25);
    CHECK(evolution_stats(log, 0.0).time_to_near_final_s == 61.0);
    CHECK_THROWS_AS(evolution_stats(std::vector<SearchLogEntry>{}), Error);
}
