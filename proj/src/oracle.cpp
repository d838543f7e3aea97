#include "iabopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "iabopt/energy.hpp"
#include "iabopt/error.hpp"
#include "iabopt/kernels.hpp"

namespace iabopt {

namespace {

constexpr double kTol = 1e-6;

struct WirelessLinks {
    std::vector<std::size_t> edges;  // edge indices of wireless edges
    std::vector<LinkRef> refs;
};

WirelessLinks wireless_links(const ProblemInstance& inst) {
    WirelessLinks w;
    for (std::size_t e = 0; e < inst.graph.edge_count(); ++e) {
        if (inst.graph.edge_at(e).kind != EdgeKind::Wireless) continue;
        w.edges.push_back(e);
        w.refs.push_back(inst.gains->link_ref(inst.graph, e));
    }
    return w;
}

void fill_levels(const ProblemInstance& inst, const WirelessLinks& links, std::span<const double> power_mw,
                 std::vector<LinkBudget>& scratch, std::vector<McsLookup>& out) {
    scratch.resize(links.refs.size());
    kernels::serial::link_budgets(*inst.gains, links.refs, power_mw, inst.noise_mw, scratch);
    out.assign(inst.graph.edge_count(), McsLookup{});
    for (std::size_t i = 0; i < links.edges.size(); ++i)
        out[links.edges[i]] = capacity_from_sinr(inst.table, scratch[i].signal_mw, scratch[i].interference_mw);
}

}  // namespace

std::vector<McsLookup> evaluate_links(const ProblemInstance& inst, std::span<const double> power_mw) {
    const WirelessLinks links = wireless_links(inst);
    std::vector<LinkBudget> budgets(links.refs.size());
    kernels::link_budgets(*inst.gains, links.refs, power_mw, inst.noise_mw, budgets);
    std::vector<McsLookup> out(inst.graph.edge_count());
    for (std::size_t i = 0; i < links.edges.size(); ++i)
        out[links.edges[i]] = capacity_from_sinr(inst.table, budgets[i].signal_mw, budgets[i].interference_mw);
    return out;
}

std::string_view to_string(ViolationRule rule) noexcept {
    switch (rule) {
        case ViolationRule::Shape: return "Shape";
        case ViolationRule::PowerBounds: return "PowerBounds";
        case ViolationRule::Activation: return "Activation";
        case ViolationRule::Tree: return "Tree";
        case ViolationRule::FlowConservation: return "FlowConservation";
        case ViolationRule::AirtimeBudget: return "AirtimeBudget";
        case ViolationRule::CapacityOverclaim: return "CapacityOverclaim";
        case ViolationRule::DemandUnmet: return "DemandUnmet";
        case ViolationRule::ObjectiveMismatch: return "ObjectiveMismatch";
    }
    return "?";
}

bool ValidationReport::has(ViolationRule rule) const noexcept {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

namespace {

std::string edge_name(const MeasurementGraph& g, std::size_t e) {
    const Edge& edge = g.edge_at(e);
    return std::to_string(edge.src) + "->" + std::to_string(edge.dst);
}

bool serves(const NetworkSolution& sol, const Commodity& c) {
    return sol.problem == ProblemKind::Energy ? c.demand_mbps > 0.0 : sol.min_rate_mbps > kTol;
}

}  // namespace

ValidationReport validate_solution(const ProblemInstance& inst, const NetworkSolution& sol) {
    ValidationReport report;
    const MeasurementGraph& g = inst.graph;
    auto flag = [&](ViolationRule rule, std::string where, double magnitude) {
        report.violations.push_back({rule, std::move(where), magnitude});
    };
    const std::size_t nf = g.frontends().size();
    const std::size_t ne = g.edge_count();
    const std::size_t nk = inst.commodities.size();
    bool shape_ok = sol.power_mw.size() == nf && sol.active.size() == nf && sol.airtime.size() == ne &&
                    sol.mcs_level.size() == ne && sol.link_rate_mbps.size() == ne && sol.flows.size() == nk &&
                    sol.ue_rate_mbps.size() == nk && inst.power.size() == nf;
    for (const auto& f : sol.flows) shape_ok = shape_ok && f.size() == ne;
    for (auto e : sol.chosen_edges) shape_ok = shape_ok && e < ne;
    if (!shape_ok) {
        flag(ViolationRule::Shape, "solution", 1.0);
        report.ok = false;
        return report;
    }

    // Powers and activation.
    const double pmax = inst.radio.p_max_mw;
    for (std::size_t f = 0; f < nf; ++f) {
        const std::string where = "frontend " + std::to_string(g.node_at(g.frontends()[f]).id);
        const double p = sol.power_mw[f];
        bool allowed = power_allowed(inst.power[f], p, pmax);
        // The energy problem may switch a fixed-power frontend off.
        if (!allowed && sol.problem == ProblemKind::Energy && std::holds_alternative<FixedPower>(inst.power[f]))
            allowed = std::abs(p) <= kTol;
        if (!allowed) flag(ViolationRule::PowerBounds, where, p);
        if (sol.active[f] != 0 && sol.active[f] != 1) flag(ViolationRule::Activation, where, sol.active[f]);
        if ((sol.active[f] == 1) != (p > 0.0)) flag(ViolationRule::Activation, where, p);
    }

    // Tree over chosen edges, covering served destinations.
    std::vector<Commodity> served;
    for (const Commodity& c : inst.commodities)
        if (serves(sol, c)) served.push_back(c);
    const TreeReport tree = validate_tree(g, sol.chosen_edges, served);
    for (const TreeViolation& v : tree.violations)
        flag(ViolationRule::Tree, std::string(to_string(v.kind)) + " at " + std::to_string(v.node), 1.0);

    std::vector<char> chosen(ne, 0);
    for (auto e : sol.chosen_edges) chosen[e] = 1;
    for (std::size_t e = 0; e < ne; ++e) {
        const Edge& edge = g.edge_at(e);
        if (edge.kind != EdgeKind::Wireless) continue;
        const double a = sol.airtime[e];
        if (a < -kTol || a > 1.0 + kTol) flag(ViolationRule::AirtimeBudget, edge_name(g, e), std::max(-a, a - 1.0));
        if (!chosen[e] && a > kTol) flag(ViolationRule::AirtimeBudget, "unchosen " + edge_name(g, e), a);
        if (chosen[e]) {
            const auto f = *g.frontend_ordinal(g.index_of(edge.src));
            if (sol.active[f] != 1) flag(ViolationRule::Activation, "sleeping sender on " + edge_name(g, e), 1.0);
        }
    }
    // Per-node airtime budget: every wireless edge charges both endpoints.
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        double used = 0.0;
        for (auto e : g.in_edges(v))
            if (g.edge_at(e).kind == EdgeKind::Wireless) used += sol.airtime[e];
        for (auto e : g.out_edges(v))
            if (g.edge_at(e).kind == EdgeKind::Wireless) used += sol.airtime[e];
        if (used > 1.0 + kTol) flag(ViolationRule::AirtimeBudget, "node " + std::to_string(g.node_at(v).id), used - 1.0);
    }

    // Flow conservation per commodity and per-edge load.
    std::vector<double> load(ne, 0.0);
    std::vector<double> delivered(nk, 0.0);
    for (std::size_t k = 0; k < nk; ++k) {
        const Commodity& c = inst.commodities[k];
        const auto& flow = sol.flows[k];
        const double unit = sol.problem == ProblemKind::Energy ? c.demand_mbps : 1.0;
        for (std::size_t e = 0; e < ne; ++e) {
            if (flow[e] < -kTol) flag(ViolationRule::FlowConservation, "negative flow on " + edge_name(g, e), -flow[e]);
            if (std::abs(flow[e]) > kTol && !chosen[e])
                flag(ViolationRule::FlowConservation, "flow on unchosen " + edge_name(g, e), std::abs(flow[e]));
            if (sol.problem == ProblemKind::Energy && std::min(std::abs(flow[e]), std::abs(flow[e] - 1.0)) > kTol)
                flag(ViolationRule::FlowConservation, "fractional routing on " + edge_name(g, e), flow[e]);
            load[e] += unit * flow[e];
        }
        const std::size_t src = g.index_of(c.source);
        const std::size_t dst = g.index_of(c.dest);
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            double in = 0.0;
            double out = 0.0;
            for (auto e : g.in_edges(v)) in += flow[e];
            for (auto e : g.out_edges(v)) out += flow[e];
            if (v == dst) delivered[k] = (in - out) * unit;
            else if (v != src && std::abs(in - out) > kTol * std::max(1.0, in))
                flag(ViolationRule::FlowConservation,
                     "commodity " + std::to_string(c.id) + " at node " + std::to_string(g.node_at(v).id),
                     std::abs(in - out));
        }
        if (std::abs(delivered[k] - sol.ue_rate_mbps[k]) > kTol * std::max(1.0, delivered[k]))
            flag(ViolationRule::FlowConservation, "reported rate of commodity " + std::to_string(c.id),
                 std::abs(delivered[k] - sol.ue_rate_mbps[k]));
    }

    // Capacities recomputed from the solution powers.
    const auto levels = evaluate_links(inst, sol.power_mw);
    for (std::size_t e = 0; e < ne; ++e) {
        if (g.edge_at(e).kind != EdgeKind::Wireless) continue;
        const McsLookup& truth = levels[e];
        if (sol.mcs_level[e] >= 0 && (!truth.level || sol.mcs_level[e] > *truth.level))
            flag(ViolationRule::CapacityOverclaim, "level on " + edge_name(g, e),
                 static_cast<double>(sol.mcs_level[e] - (truth.level ? *truth.level : -1)));
        const double cap = sol.airtime[e] * truth.capacity_mbps;
        if (load[e] > cap + kTol * std::max(1.0, cap))
            flag(ViolationRule::CapacityOverclaim, "load on " + edge_name(g, e), load[e] - cap);
        if (sol.link_rate_mbps[e] > cap + kTol * std::max(1.0, cap))
            flag(ViolationRule::CapacityOverclaim, "rate on " + edge_name(g, e), sol.link_rate_mbps[e] - cap);
    }

    // Demands and objective.
    if (sol.problem == ProblemKind::Throughput) {
        double z = nk == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < nk; ++k) z = std::min(z, delivered[k]);
        report.recomputed_objective = z;
        if (std::abs(sol.min_rate_mbps - z) > kTol * std::max(1.0, z))
            flag(ViolationRule::DemandUnmet, "minimum rate", std::abs(sol.min_rate_mbps - z));
        if (std::abs(sol.objective - z) > kTol * std::max(1.0, z))
            flag(ViolationRule::ObjectiveMismatch, "throughput objective", std::abs(sol.objective - z));
    } else {
        for (std::size_t k = 0; k < nk; ++k) {
            const double d = inst.commodities[k].demand_mbps;
            if (delivered[k] < d - kTol * std::max(1.0, d))
                flag(ViolationRule::DemandUnmet, "commodity " + std::to_string(inst.commodities[k].id), d - delivered[k]);
        }
        try {
            report.recomputed_objective = total_power(g, sol, inst.power_model).total_w;
            const double p = report.recomputed_objective;
            if (std::abs(sol.objective - p) > kTol * std::max(1.0, p))
                flag(ViolationRule::ObjectiveMismatch, "energy objective", std::abs(sol.objective - p));
        } catch (const Error& e) {
            flag(ViolationRule::Activation, e.what(), 1.0);
        }
    }
    report.ok = report.violations.empty();
    return report;
}

namespace {

// Subtree UE counts per tree edge; returns false when a UE is not reached.
bool downstream_counts(const MeasurementGraph& g, std::span<const std::size_t> tree_edges,
                       std::span<const std::size_t> ue_nodes, std::vector<double>& down) {
    std::vector<std::ptrdiff_t> parent(g.node_count(), -1);
    for (auto e : tree_edges) parent[g.index_of(g.edge_at(e).dst)] = static_cast<std::ptrdiff_t>(e);
    down.assign(g.edge_count(), 0.0);
    const std::size_t donor = g.donor_index();
    for (auto ue : ue_nodes) {
        std::size_t v = ue;
        std::size_t steps = 0;
        while (v != donor) {
            if (parent[v] < 0 || ++steps > g.node_count()) return false;
            const auto e = static_cast<std::size_t>(parent[v]);
            down[e] += 1.0;
            v = g.index_of(g.edge_at(e).src);
        }
    }
    return true;
}

}  // namespace

double max_min_on_tree(const MeasurementGraph& g, std::span<const std::size_t> tree_edges,
                       std::span<const double> capacity_mbps, std::span<const std::size_t> ue_nodes) {
    if (ue_nodes.empty()) return std::numeric_limits<double>::infinity();
    std::vector<double> down;
    if (!downstream_counts(g, tree_edges, ue_nodes, down))
        throw Error(ErrorCode::InvalidArgument, "max_min_on_tree: a UE is not reached by the tree");
    // Airtime per unit of Z on each node.
    std::vector<double> load(g.node_count(), 0.0);
    double hi = std::numeric_limits<double>::infinity();
    for (auto e : tree_edges) {
        const Edge& edge = g.edge_at(e);
        if (edge.kind != EdgeKind::Wireless || down[e] == 0.0) continue;
        if (!(capacity_mbps[e] > 0.0))
            throw Error(ErrorCode::ZeroCapacityLink, "link " + edge_name(g, e) + " carries traffic at zero capacity");
        const double per_z = down[e] / capacity_mbps[e];
        load[g.index_of(edge.src)] += per_z;
        load[g.index_of(edge.dst)] += per_z;
        hi = std::min(hi, capacity_mbps[e] / down[e]);
    }
    if (!std::isfinite(hi)) return std::numeric_limits<double>::infinity();
    auto feasible = [&](double z) {
        for (double l : load)
            if (z * l > 1.0) return false;
        return true;
    };
    double lo = 0.0;
    hi *= 1.0 + 1e-12;
    while (hi - lo > 1e-11 && hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

namespace {

struct Enumeration {
    const ProblemInstance& inst;
    ProblemKind problem;
    WirelessLinks links;
    std::vector<std::vector<double>> power_cands;  // per frontend
    std::vector<std::size_t> served_ues;           // node indices
    std::vector<double> served_demand;             // aligned with served_ues
    std::vector<std::size_t> decision_nodes;       // UEs then MT+DUs
    std::vector<std::vector<std::ptrdiff_t>> options;  // in-edge per decision node, -1 = none
    std::uint64_t power_configs = 1;
    std::uint64_t parent_configs = 1;

    Enumeration(const ProblemInstance& instance, ProblemKind kind) : inst(instance), problem(kind) {
        validate(inst);
        const MeasurementGraph& g = inst.graph;
        links = wireless_links(inst);
        for (const PowerPlan& plan : inst.power) {
            if (std::holds_alternative<ContinuousPower>(plan))
                throw Error(ErrorCode::UnsupportedMode, "enumeration needs Fixed or Discrete power plans");
            auto cands = power_candidates(plan, inst.radio.p_max_mw);
            if (kind == ProblemKind::Energy && std::holds_alternative<FixedPower>(plan) && cands[0] > 0.0)
                cands.insert(cands.begin(), 0.0);
            power_cands.push_back(std::move(cands));
        }
        for (const Commodity& c : inst.commodities) {
            if (kind == ProblemKind::Energy && c.demand_mbps <= 0.0) continue;
            served_ues.push_back(g.index_of(c.dest));
            served_demand.push_back(c.demand_mbps);
        }
        std::vector<std::size_t> ue_nodes = served_ues;
        std::sort(ue_nodes.begin(), ue_nodes.end());
        ue_nodes.erase(std::unique(ue_nodes.begin(), ue_nodes.end()), ue_nodes.end());
        for (auto v : ue_nodes) decision_nodes.push_back(v);
        for (std::size_t v = 0; v < g.node_count(); ++v)
            if (g.node_at(v).kind == NodeKind::MtDu) decision_nodes.push_back(v);
        for (auto v : decision_nodes) {
            std::vector<std::ptrdiff_t> opts;
            if (g.node_at(v).kind == NodeKind::MtDu) opts.push_back(-1);
            for (auto e : g.in_edges(v)) opts.push_back(static_cast<std::ptrdiff_t>(e));
            options.push_back(std::move(opts));
        }
        auto mul = [](std::uint64_t a, std::uint64_t b) {
            if (b != 0 && a > kEnumerationGuard * 16 / b) return kEnumerationGuard * 16;
            return a * b;
        };
        for (const auto& c : power_cands) power_configs = mul(power_configs, c.size());
        for (const auto& o : options) parent_configs = mul(parent_configs, o.size());
    }

    std::uint64_t size() const {
        if (parent_configs != 0 && power_configs > kEnumerationGuard * 16 / parent_configs) return kEnumerationGuard * 16;
        return power_configs * parent_configs;
    }

    void guard() const {
        if (size() > kEnumerationGuard)
            throw Error(ErrorCode::TooLarge, "enumeration needs " + std::to_string(size()) + " configurations");
    }

    std::vector<double> powers_of(std::uint64_t index) const {
        std::vector<double> p(power_cands.size());
        for (std::size_t f = 0; f < power_cands.size(); ++f) {
            p[f] = power_cands[f][index % power_cands[f].size()];
            index /= power_cands[f].size();
        }
        return p;
    }

    // Builds the tree for one parent assignment; false when a served UE is
    // not connected to the donor.
    bool tree_of(std::uint64_t index, std::vector<std::ptrdiff_t>& parent, std::vector<char>& in_tree,
                 std::vector<std::size_t>& tree) const {
        const MeasurementGraph& g = inst.graph;
        std::fill(parent.begin(), parent.end(), -1);
        for (std::size_t i = 0; i < decision_nodes.size(); ++i) {
            parent[decision_nodes[i]] = options[i][index % options[i].size()];
            index /= options[i].size();
        }
        for (auto f : g.frontends()) {
            auto in = g.in_edges(f);
            if (!in.empty()) parent[f] = static_cast<std::ptrdiff_t>(in[0]);
        }
        std::fill(in_tree.begin(), in_tree.end(), 0);
        tree.clear();
        for (auto ue : served_ues) {
            std::size_t v = ue;
            std::size_t steps = 0;
            while (v != g.donor_index()) {
                if (parent[v] < 0 || ++steps > g.node_count()) return false;
                const auto e = static_cast<std::size_t>(parent[v]);
                if (!in_tree[e]) {
                    in_tree[e] = 1;
                    tree.push_back(e);
                }
                v = g.index_of(g.edge_at(e).src);
            }
        }
        std::sort(tree.begin(), tree.end());
        return true;
    }

    // Value of one power assignment: best over parent choices. Lower parent
    // index wins ties.
    struct Best {
        double value;
        std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
        std::vector<std::size_t> tree;
    };

    bool better(double a, double b) const { return problem == ProblemKind::Throughput ? a > b : a < b; }

    double worst() const {
        return problem == ProblemKind::Throughput ? -std::numeric_limits<double>::infinity()
                                                  : std::numeric_limits<double>::infinity();
    }

    Best evaluate_power(std::uint64_t power_index) const {
        const MeasurementGraph& g = inst.graph;
        const std::vector<double> p = powers_of(power_index);
        std::vector<LinkBudget> scratch;
        std::vector<McsLookup> levels;
        fill_levels(inst, links, p, scratch, levels);
        std::vector<double> cap(g.edge_count(), 0.0);
        for (std::size_t e = 0; e < g.edge_count(); ++e) cap[e] = levels[e].capacity_mbps;
        std::vector<int> active(p.size());
        for (std::size_t f = 0; f < p.size(); ++f) active[f] = p[f] > 0.0 ? 1 : 0;

        Best best{worst(), std::numeric_limits<std::uint64_t>::max(), {}};
        std::vector<std::ptrdiff_t> parent(g.node_count());
        std::vector<char> in_tree(g.edge_count());
        std::vector<std::size_t> tree;
        std::vector<double> down;
        std::vector<double> airtime(g.edge_count());
        std::vector<double> used(g.node_count());
        for (std::uint64_t t = 0; t < parent_configs; ++t) {
            if (!tree_of(t, parent, in_tree, tree)) continue;
            double value = 0.0;
            if (problem == ProblemKind::Throughput) {
                bool dead = false;
                for (auto e : tree)
                    if (g.edge_at(e).kind == EdgeKind::Wireless && cap[e] <= 0.0) dead = true;
                value = dead ? 0.0 : max_min_on_tree(g, tree, cap, served_ues);
                if (served_ues.empty()) value = 0.0;
            } else {
                std::fill(airtime.begin(), airtime.end(), 0.0);
                std::fill(used.begin(), used.end(), 0.0);
                down.assign(g.edge_count(), 0.0);
                for (std::size_t u = 0; u < served_ues.size(); ++u) {
                    std::size_t v = served_ues[u];
                    while (v != g.donor_index()) {
                        const auto e = static_cast<std::size_t>(parent[v]);
                        down[e] += served_demand[u];
                        v = g.index_of(g.edge_at(e).src);
                    }
                }
                bool ok = true;
                for (auto e : tree) {
                    const Edge& edge = g.edge_at(e);
                    if (edge.kind != EdgeKind::Wireless) continue;
                    if (cap[e] <= 0.0) {
                        ok = false;
                        break;
                    }
                    airtime[e] = down[e] / cap[e];
                    used[g.index_of(edge.src)] += airtime[e];
                    used[g.index_of(edge.dst)] += airtime[e];
                }
                for (double u : used) ok = ok && u <= 1.0 + 1e-9;
                if (!ok) continue;
                value = total_power(g, p, active, airtime, inst.power_model).total_w;
            }
            if (better(value, best.value)) best = {value, t, tree};
        }
        return best;
    }

    OracleResult finish(double value, std::uint64_t power_index, std::vector<std::size_t> tree) const {
        if (problem == ProblemKind::Energy && !std::isfinite(value))
            throw Error(ErrorCode::NoFeasible, "no configuration meets every demand");
        OracleResult r;
        r.value = std::isfinite(value) ? value : 0.0;
        r.power_mw = powers_of(power_index);
        r.tree_edges = std::move(tree);
        r.configurations = size();
        return r;
    }
};

}  // namespace

std::uint64_t enumeration_size(const ProblemInstance& instance, ProblemKind problem) {
    return Enumeration(instance, problem).size();
}

namespace {

OracleResult enumerate_parallel(const ProblemInstance& instance, ProblemKind problem) {
    const Enumeration en(instance, problem);
    en.guard();
    const auto n = static_cast<std::int64_t>(en.power_configs);
    constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
    double best_value = en.worst();
    std::int64_t best_power = kNone;
    std::vector<std::size_t> best_tree;
#pragma omp parallel
    {
        double local_value = en.worst();
        std::int64_t local_power = kNone;
        std::vector<std::size_t> local_tree;
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            auto b = en.evaluate_power(static_cast<std::uint64_t>(i));
            if (b.index == std::numeric_limits<std::uint64_t>::max()) continue;
            if (en.better(b.value, local_value) || (b.value == local_value && i < local_power)) {
                local_value = b.value;
                local_power = i;
                local_tree = std::move(b.tree);
            }
        }
#pragma omp critical(iabopt_oracle_reduce)
        {
            if (local_power != kNone && (best_power == kNone || en.better(local_value, best_value) ||
                                         (local_value == best_value && local_power < best_power))) {
                best_value = local_value;
                best_power = local_power;
                best_tree = std::move(local_tree);
            }
        }
    }
    return en.finish(best_value, best_power == kNone ? 0 : static_cast<std::uint64_t>(best_power), std::move(best_tree));
}

OracleResult enumerate_serial(const ProblemInstance& instance, ProblemKind problem) {
    const Enumeration en(instance, problem);
    en.guard();
    double best_value = en.worst();
    std::uint64_t best_power = 0;
    std::vector<std::size_t> best_tree;
    for (std::uint64_t i = 0; i < en.power_configs; ++i) {
        auto b = en.evaluate_power(i);
        if (b.index == std::numeric_limits<std::uint64_t>::max()) continue;
        if (en.better(b.value, best_value)) {
            best_value = b.value;
            best_power = i;
            best_tree = std::move(b.tree);
        }
    }
    return en.finish(best_value, best_power, std::move(best_tree));
}

}  // namespace

OracleResult enumerate_optimal_throughput(const ProblemInstance& instance) {
    return enumerate_parallel(instance, ProblemKind::Throughput);
}
OracleResult enumerate_optimal_energy(const ProblemInstance& instance) {
    return enumerate_parallel(instance, ProblemKind::Energy);
}

namespace serial {
OracleResult enumerate_optimal_throughput(const ProblemInstance& instance) {
    return enumerate_serial(instance, ProblemKind::Throughput);
}
OracleResult enumerate_optimal_energy(const ProblemInstance& instance) {
    return enumerate_serial(instance, ProblemKind::Energy);
}
}  // namespace serial

}  // namespace iabopt
