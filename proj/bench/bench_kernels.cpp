// Serial reference vs OpenMP kernels on generated scenarios.

#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "iabopt/kernels.hpp"
#include "iabopt/oracle.hpp"
#include "iabopt/scenario.hpp"

using namespace iabopt;

namespace {

struct LinkSet {
    Scenario scenario;
    GainMatrix gains;
    std::vector<LinkRef> links;
    std::vector<double> power;
};

// About 90 units per km^2 and 10 UEs per unit at peak load.
const LinkSet& link_set(double area_km2) {
    static std::map<double, LinkSet> cache;
    auto it = cache.find(area_km2);
    if (it != cache.end()) return it->second;
    ScenarioConfig c;
    c.area_km2 = area_km2;
    c.seed = 3;
    LinkSet s{generate_at_load(c, 1.0, 0), {}, {}, {}};
    s.gains = GainMatrix(s.scenario.graph, c.radio);
    for (std::size_t e = 0; e < s.scenario.graph.edge_count(); ++e)
        if (s.scenario.graph.edge_at(e).kind == EdgeKind::Wireless) s.links.push_back(s.gains.link_ref(s.scenario.graph, e));
    s.power.assign(s.gains.frontend_count(), c.radio.p_max_mw);
    for (std::size_t f = 0; f < s.power.size(); f += 3) s.power[f] *= 0.5;
    return cache.emplace(area_km2, std::move(s)).first->second;
}

template <bool Parallel>
void BM_link_budgets(benchmark::State& state) {
    const LinkSet& s = link_set(static_cast<double>(state.range(0)) / 100.0);
    std::vector<LinkBudget> out(s.links.size());
    for (auto _ : state) {
        if constexpr (Parallel)
            kernels::link_budgets(s.gains, s.links, s.power, 2e-9, out);
        else
            kernels::serial::link_budgets(s.gains, s.links, s.power, 2e-9, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["links"] = static_cast<double>(s.links.size());
    state.counters["frontends"] = static_cast<double>(s.gains.frontend_count());
}

template <bool Parallel>
void BM_max_interference(benchmark::State& state) {
    const LinkSet& s = link_set(static_cast<double>(state.range(0)) / 100.0);
    std::vector<double> out(s.links.size());
    for (auto _ : state) {
        if constexpr (Parallel)
            kernels::max_interference(s.gains, s.links, s.power, 2e-9, out);
        else
            kernels::serial::max_interference(s.gains, s.links, s.power, 2e-9, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["links"] = static_cast<double>(s.links.size());
}

// Three units with two sectors each on a 2-level grid.
const ProblemInstance& oracle_instance() {
    static const ProblemInstance inst = [] {
        ScenarioConfig c;
        c.area_km2 = 3.0 / 90.0;
        c.sectors_per_unit = 2;
        c.l_ue_per_gnb = 1.0;
        c.power_levels = 2;
        c.noise_mw = 2e-9;
        c.seed = 5;
        return scenario_instance(c, generate_at_load(c, 1.0, 0));
    }();
    return inst;
}

template <bool Parallel>
void BM_enumerate_throughput(benchmark::State& state) {
    const ProblemInstance& inst = oracle_instance();
    for (auto _ : state) {
        OracleResult r = Parallel ? enumerate_optimal_throughput(inst) : serial::enumerate_optimal_throughput(inst);
        benchmark::DoNotOptimize(r.value);
    }
    state.counters["configurations"] = static_cast<double>(enumeration_size(inst, ProblemKind::Throughput));
}

}  // namespace

BENCHMARK(BM_link_budgets<false>)->Name("link_budgets/serial")->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_link_budgets<true>)->Name("link_budgets/openmp")->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_max_interference<false>)->Name("max_interference/serial")->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_max_interference<true>)->Name("max_interference/openmp")->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_enumerate_throughput<false>)->Name("enumerate_throughput/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_throughput<true>)->Name("enumerate_throughput/openmp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
