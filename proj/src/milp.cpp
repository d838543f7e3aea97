#include "iabopt/milp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iabopt/energy.hpp"
#include "iabopt/error.hpp"
#include "iabopt/oracle.hpp"

namespace iabopt {

namespace {

// Interferer terms whose worst case is below this (normalized) are dropped.
constexpr double kNegligible = 1e-10;

std::string id_tag(NodeId id) {
    std::string s = std::to_string(id);
    if (!s.empty() && s[0] == '-') s[0] = 'm';
    return s;
}

std::string edge_tag(const Edge& e) { return id_tag(e.src) + "_" + id_tag(e.dst); }

// A frontend's power as a model expression with its range.
struct PowerTerm {
    LinearExpr expr;
    double lo = 0.0;
    double hi = 0.0;
    bool has_on = false;  // `on` is a model expression (otherwise constant)
    LinearExpr on;
    double min_nonzero = 0.0;
};

struct Builder {
    const ProblemInstance& inst;
    const SolverOptions& options;
    ProblemKind problem;
    BuiltModel out;
    std::vector<PowerTerm> power;
    double c_top = 0.0;

    Builder(const ProblemInstance& instance, const SolverOptions& opts, ProblemKind kind)
        : inst(instance), options(opts), problem(kind) {
        validate(inst);
        out.layout.problem = kind;
        c_top = inst.table.top().capacity_mbps;
    }

    ModelIR& ir() { return out.ir; }
    ModelLayout& layout() { return out.layout; }
    const MeasurementGraph& g() const { return inst.graph; }

    void add_power_variables() {
        const MeasurementGraph& graph = g();
        for (std::size_t f = 0; f < inst.power.size(); ++f) {
            const std::string tag = id_tag(graph.node_at(graph.frontends()[f]).id);
            const PowerPlan& plan = inst.power[f];
            PowerVars pv;
            PowerTerm pt;
            if (const auto* fixed = std::get_if<FixedPower>(&plan)) {
                pv.fixed_mw = fixed->mw;
                pt.min_nonzero = fixed->mw;
                if (problem == ProblemKind::Energy) {
                    pv.active = ir().add_binary("a_" + tag);
                    if (fixed->mw <= 0.0) ir().set_bounds(pv.active, 0.0, 0.0);
                    pt.expr.add(pv.active, fixed->mw);
                    pt.lo = 0.0;
                    pt.hi = fixed->mw;
                    pt.has_on = fixed->mw > 0.0;
                    pt.on.add(pv.active, 1.0);
                } else {
                    pt.expr = LinearExpr(fixed->mw);
                    pt.lo = pt.hi = fixed->mw;
                }
            } else if (std::holds_alternative<ContinuousPower>(plan)) {
                if (problem == ProblemKind::Energy)
                    throw Error(ErrorCode::UnsupportedMode, "continuous power makes the energy objective bilinear");
                pv.continuous = ir().add_variable("P_" + tag, VarKind::Continuous, 0.0, inst.radio.p_max_mw);
                pt.expr.add(pv.continuous, 1.0);
                pt.lo = 0.0;
                pt.hi = inst.radio.p_max_mw;
            } else {
                const auto& levels = std::get<DiscretePower>(plan).levels_mw;
                pv.levels_mw = levels;
                LinearExpr sum;
                LinearExpr on;
                for (std::size_t l = 0; l < levels.size(); ++l) {
                    const VarId lam = ir().add_binary("lambda_" + tag + "_" + std::to_string(l));
                    pv.lambda.push_back(lam);
                    sum.add(lam, 1.0);
                    pt.expr.add(lam, levels[l]);
                    if (levels[l] > 0.0) {
                        on.add(lam, 1.0);
                        if (pt.min_nonzero == 0.0) pt.min_nonzero = levels[l];
                    }
                }
                ir().add_constraint("one_level_" + tag, sum, RowSense::Eq, 1.0);
                pt.lo = levels.front();
                pt.hi = levels.back();
                pt.has_on = levels.front() == 0.0 && levels.back() > 0.0;
                pt.on = on;
                if (problem == ProblemKind::Energy) {
                    pv.active = ir().add_binary("a_" + tag);
                    LinearExpr link = on;
                    link.add(pv.active, -1.0);
                    ir().add_constraint("active_" + tag, link, RowSense::Eq, 0.0);
                    pt.on = LinearExpr();
                    pt.on.add(pv.active, 1.0);
                }
            }
            layout().power.push_back(std::move(pv));
            power.push_back(std::move(pt));
        }
    }

    void add_edge_variables() {
        const MeasurementGraph& graph = g();
        const std::size_t levels = inst.table.size();
        layout().f.assign(graph.edge_count(), -1);
        layout().alpha.assign(graph.edge_count(), -1);
        layout().c.assign(graph.edge_count(), -1);
        layout().phi.assign(graph.edge_count(), {});
        for (std::size_t e = 0; e < graph.edge_count(); ++e) {
            const Edge& edge = graph.edge_at(e);
            const std::string tag = edge_tag(edge);
            layout().f[e] = ir().add_binary("f_" + tag);
            if (edge.kind != EdgeKind::Wireless) continue;
            layout().alpha[e] = ir().add_variable("alpha_" + tag, VarKind::Continuous, 0.0, 1.0);
            layout().c[e] = ir().add_variable("c_" + tag, VarKind::Continuous, 0.0, c_top);
            for (std::size_t i = 0; i < levels; ++i)
                layout().phi[e].push_back(ir().add_binary("phi" + std::to_string(i) + "_" + tag));
            // Link-use coupling: airtime only on chosen links.
            ir().add_constraint("use_" + tag, LinearExpr().add(layout().alpha[e], 1.0).add(layout().f[e], -1.0),
                                RowSense::Le, 0.0);
        }
    }

    void add_tree_and_airtime() {
        const MeasurementGraph& graph = g();
        for (std::size_t v = 0; v < graph.node_count(); ++v) {
            const std::string tag = id_tag(graph.node_at(v).id);
            if (v != graph.donor_index() && graph.in_degree(v) > 1) {
                LinearExpr in;
                for (auto e : graph.in_edges(v)) in.add(layout().f[e], 1.0);
                ir().add_constraint("tree_" + tag, in, RowSense::Le, 1.0);
            }
            LinearExpr air;
            for (auto e : graph.in_edges(v))
                if (layout().alpha[e] >= 0) air.add(layout().alpha[e], 1.0);
            for (auto e : graph.out_edges(v))
                if (layout().alpha[e] >= 0) air.add(layout().alpha[e], 1.0);
            if (air.terms.size() > 1) ir().add_constraint("airtime_" + tag, air, RowSense::Le, 1.0);
        }
    }

    void add_commodity_flows() {
        const MeasurementGraph& graph = g();
        const bool energy = problem == ProblemKind::Energy;
        for (std::size_t k = 0; k < inst.commodities.size(); ++k) {
            const Commodity& com = inst.commodities[k];
            if (energy && com.demand_mbps <= 0.0) continue;
            layout().commodities.push_back(k);
            std::vector<VarId> vars(graph.edge_count(), -1);
            const std::size_t dest = graph.index_of(com.dest);
            const std::size_t src = graph.index_of(com.source);
            for (std::size_t e = 0; e < graph.edge_count(); ++e) {
                const Edge& edge = graph.edge_at(e);
                const std::size_t to = graph.index_of(edge.dst);
                if (graph.node_at(to).kind == NodeKind::Ue && to != dest) continue;
                const std::string name = "fk" + std::to_string(com.id) + "_" + edge_tag(edge);
                vars[e] = energy ? ir().add_binary(name) : ir().add_variable(name, VarKind::Continuous, 0.0, c_top);
                if (energy)
                    ir().add_constraint("route_" + name, LinearExpr().add(vars[e], 1.0).add(layout().f[e], -1.0),
                                        RowSense::Le, 0.0);
            }
            for (std::size_t v = 0; v < graph.node_count(); ++v) {
                LinearExpr balance;  // in - out
                for (auto e : graph.in_edges(v))
                    if (vars[e] >= 0) balance.add(vars[e], 1.0);
                for (auto e : graph.out_edges(v))
                    if (vars[e] >= 0) balance.add(vars[e], -1.0);
                const std::string name = "flow" + std::to_string(com.id) + "_" + id_tag(graph.node_at(v).id);
                if (v == dest) {
                    if (energy) {
                        ir().add_constraint(name, balance, RowSense::Eq, 1.0);
                    } else {
                        balance.add(layout().z, -1.0);  // per-UE bound
                        ir().add_constraint(name, balance, RowSense::Ge, 0.0);
                    }
                } else if (v == src) {
                    if (energy) ir().add_constraint(name, balance, RowSense::Eq, -1.0);
                } else if (!balance.terms.empty()) {
                    ir().add_constraint(name, balance, RowSense::Eq, 0.0);
                }
            }
            layout().fk.push_back(std::move(vars));
        }
    }

    void add_capacity_rows() {
        const MeasurementGraph& graph = g();
        const bool energy = problem == ProblemKind::Energy;
        const double wired_cap = c_top * std::max<std::size_t>(1, layout().commodities.size());
        for (std::size_t e = 0; e < graph.edge_count(); ++e) {
            const Edge& edge = graph.edge_at(e);
            const std::string tag = edge_tag(edge);
            LinearExpr load;
            for (std::size_t j = 0; j < layout().fk.size(); ++j) {
                const VarId v = layout().fk[j][e];
                if (v < 0) continue;
                load.add(v, energy ? inst.commodities[layout().commodities[j]].demand_mbps : 1.0);
            }
            if (edge.kind == EdgeKind::Wired) {
                if (!energy && !load.terms.empty()) {
                    load.add(layout().f[e], -wired_cap);
                    ir().add_constraint("wired_" + tag, load, RowSense::Le, 0.0);
                }
                continue;
            }
            if (!load.terms.empty()) {
                load.add(layout().c[e], -1.0);
                ir().add_constraint("cap_" + tag, load, RowSense::Le, 0.0);
            }
            // c <= sum_i dC_i * phi_i * alpha with phi_{i+1} <= phi_i.
            LinearExpr coupling;
            coupling.add(layout().c[e], 1.0);
            double prev = 0.0;
            for (std::size_t i = 0; i < inst.table.size(); ++i) {
                const VarId phi = layout().phi[e][i];
                const double delta = inst.table.entries[i].capacity_mbps - prev;
                prev = inst.table.entries[i].capacity_mbps;
                if (i > 0)
                    ir().add_constraint("chain" + std::to_string(i) + "_" + tag,
                                        LinearExpr().add(phi, 1.0).add(layout().phi[e][i - 1], -1.0), RowSense::Le,
                                        0.0);
                if (delta == 0.0) continue;
                auto prod = linearize_binary_product(ir(), phi, layout().alpha[e], 1.0,
                                                     "y" + std::to_string(i) + "_" + tag);
                for (auto& row : prod.rows) ir().add_constraint(std::move(row));
                coupling.add(prod.aux, -delta);
            }
            ir().add_constraint("couple_" + tag, coupling, RowSense::Le, 0.0);
            if (energy) {
                const auto f = *graph.frontend_ordinal(graph.index_of(edge.src));
                ir().add_constraint("sender_on_" + tag,
                                    LinearExpr().add(layout().f[e], 1.0).add(layout().power[f].active, -1.0),
                                    RowSense::Le, 0.0);
            }
        }
    }

    void add_indicator_rows() {
        const MeasurementGraph& graph = g();
        const GainMatrix& gains = *inst.gains;
        const double eps = kIndicatorMargin;
        for (std::size_t e = 0; e < graph.edge_count(); ++e) {
            const Edge& edge = graph.edge_at(e);
            if (edge.kind != EdgeKind::Wireless) continue;
            const std::string tag = edge_tag(edge);
            const LinkRef link = gains.link_ref(graph, e);
            const PowerTerm& own = power[link.tx];
            const double s = gains.serving(link.rx_row, link.tx);
            const double scale = s * own.hi;
            for (std::size_t i = 0; i < inst.table.size(); ++i) {
                const VarId phi = layout().phi[e][i];
                if (!(scale > 0.0)) {
                    ir().set_bounds(phi, 0.0, 0.0);
                    continue;
                }
                const double th = inst.table.entries[i].threshold_linear();
                const double n0 = th * inst.noise_mw / scale;
                LinearExpr expr;
                expr.add(own.expr, s / scale);
                expr.constant -= n0;
                double lo = s * own.lo / scale - n0;
                double hi = 1.0 - n0;
                double dropped = 0.0;
                std::vector<std::size_t> dominant;
                for (std::size_t r = 0; r < power.size(); ++r) {
                    if (r == link.tx) continue;
                    const double gr = gains.interfering(link.rx_row, r);
                    const PowerTerm& pr = power[r];
                    if (gr <= 0.0 || pr.hi <= 0.0) continue;
                    const double kappa = th * gr / scale;
                    if (pr.has_on && kappa * pr.min_nonzero > 1.0 + 1e-12) {
                        dominant.push_back(r);
                        continue;
                    }
                    if (kappa * pr.hi < kNegligible) {
                        dropped += kappa * pr.hi;
                        continue;
                    }
                    expr.add(pr.expr, -kappa);
                    lo -= kappa * pr.hi;
                    hi -= kappa * pr.lo;
                }
                const std::string name = std::to_string(i) + "_" + tag;
                // phi = 1 => expr >= eps
                if (hi - eps < 0.0) {
                    ir().set_bounds(phi, 0.0, 0.0);
                    continue;
                }
                LinearExpr on_side = expr;
                on_side.constant -= eps;
                if (lo - eps < 0.0) ir().add_constraint(linearize_indicator(on_side, phi, IndicatorSense::GeWhenOn, eps - lo, "ind_on" + name));
                for (auto r : dominant) {
                    LinearExpr excl;
                    excl.add(phi, 1.0).add(power[r].on, 1.0);
                    ir().add_constraint("dom" + name + "_" + std::to_string(r), excl, RowSense::Le, 1.0);
                }
                // phi = 0 => expr <= eps (+ dropped), relaxed while a dominant interferer is on.
                LinearExpr off_side = expr;
                off_side.constant -= eps + dropped;
                for (auto r : dominant) off_side.add(power[r].on, -1.0);
                const double m_off = hi - eps - dropped;
                if (m_off > 0.0)
                    ir().add_constraint(linearize_indicator(off_side, phi, IndicatorSense::LeWhenOff, m_off, "ind_off" + name));
            }
        }
    }

    void set_throughput_objective() {
        ir().set_objective(iabopt::ObjSense::Maximize, LinearExpr().add(layout().z, 1.0));
    }

    void set_energy_objective() {
        const MeasurementGraph& graph = g();
        const PowerModelParams& pm = inst.power_model;
        LinearExpr obj;
        std::map<int, std::vector<VarId>> unit_actives;
        for (std::size_t f = 0; f < layout().power.size(); ++f) {
            const PowerVars& pv = layout().power[f];
            const std::size_t node = graph.frontends()[f];
            obj.constant += pm.n_trx * pm.p_sleep_w;
            obj.add(pv.active, pm.n_trx * (pm.p0_w - pm.p_sleep_w));
            unit_actives[graph.node_at(node).unit_id].push_back(pv.active);
            for (auto e : graph.out_edges(node)) {
                const VarId alpha = layout().alpha[e];
                if (alpha < 0) continue;
                if (pv.lambda.empty()) {
                    // P = p * a and alpha <= f <= a, so P * alpha = p * alpha.
                    obj.add(alpha, pm.delta_p * pv.fixed_mw * 1e-3);
                    continue;
                }
                for (std::size_t l = 0; l < pv.lambda.size(); ++l) {
                    if (pv.levels_mw[l] <= 0.0) continue;
                    auto prod = linearize_binary_product(ir(), pv.lambda[l], alpha, 1.0,
                                                         "w_" + ir().variable(pv.lambda[l]).name.substr(7) + "_" +
                                                             edge_tag(graph.edge_at(e)));
                    for (auto& row : prod.rows) ir().add_constraint(std::move(row));
                    obj.add(prod.aux, pm.delta_p * pv.levels_mw[l] * 1e-3);
                }
            }
        }
        if (pm.unit_active_w > 0.0) {
            for (const auto& [unit, actives] : unit_actives) {
                const VarId b = ir().add_binary("b_unit" + std::to_string(unit));
                for (VarId a : actives)
                    ir().add_constraint("unit_on_" + std::to_string(unit) + "_" + ir().variable(a).name,
                                        LinearExpr().add(a, 1.0).add(b, -1.0), RowSense::Le, 0.0);
                obj.add(b, pm.unit_active_w);
            }
        }
        ir().set_objective(iabopt::ObjSense::Minimize, std::move(obj));
    }
};

}  // namespace

std::vector<BigM> compute_big_m(const ProblemInstance& inst, std::size_t edge, const SolverOptions& options) {
    const GainMatrix& gains = *inst.gains;
    const LinkRef link = gains.link_ref(inst.graph, edge);
    const std::vector<double> upper = power_upper_bounds(inst);
    const double s_max = gains.serving(link.rx_row, link.tx) * upper[link.tx];
    const double i_max = gains.interference_mw(link, upper) + inst.noise_mw;
    std::vector<BigM> out;
    for (const McsEntry& entry : inst.table.entries) {
        BigM m{entry.threshold_linear() * i_max, s_max};
        if (options.big_m_cap) {
            m.lower = std::min(m.lower, *options.big_m_cap);
            m.upper = std::min(m.upper, *options.big_m_cap);
        }
        out.push_back(m);
    }
    return out;
}

BuiltModel build_throughput_model(const ProblemInstance& instance, const SolverOptions& options) {
    if (instance.commodities.empty()) throw Error(ErrorCode::EmptyCommodities, "throughput model needs commodities");
    Builder b(instance, options, ProblemKind::Throughput);
    b.layout().z = b.ir().add_variable("Z", VarKind::Continuous, 0.0, b.c_top);
    b.add_power_variables();
    b.add_edge_variables();
    b.add_tree_and_airtime();
    b.add_commodity_flows();
    b.add_capacity_rows();
    b.add_indicator_rows();
    b.set_throughput_objective();
    return std::move(b.out);
}

BuiltModel build_energy_model(const ProblemInstance& instance, const SolverOptions& options) {
    for (const Commodity& c : instance.commodities)
        if (!(c.demand_mbps >= 0.0) || !std::isfinite(c.demand_mbps))
            throw Error(ErrorCode::DemandMissing, "commodity " + std::to_string(c.id) + " has no valid demand");
    for (const PowerPlan& plan : instance.power)
        if (std::holds_alternative<ContinuousPower>(plan))
            throw Error(ErrorCode::UnsupportedMode, "continuous power makes the energy objective bilinear");
    Builder b(instance, options, ProblemKind::Energy);
    b.add_power_variables();
    b.add_edge_variables();
    b.add_tree_and_airtime();
    b.add_commodity_flows();
    b.add_capacity_rows();
    b.add_indicator_rows();
    b.set_energy_objective();
    return std::move(b.out);
}

namespace {

bool on(const std::vector<double>& values, VarId v) { return v >= 0 && values[static_cast<std::size_t>(v)] > 0.5; }

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorCode::ExtractionMismatch, what); }

}  // namespace

NetworkSolution extract_solution(const RawSolution& raw, const BuiltModel& model, const ProblemInstance& inst) {
    if (!raw.has_solution || raw.values.size() != model.ir.variables().size())
        mismatch("raw solution carries no values for this model");
    const auto& x = raw.values;
    const ModelLayout& L = model.layout;
    const MeasurementGraph& g = inst.graph;
    const bool energy = L.problem == ProblemKind::Energy;
    NetworkSolution sol = empty_solution(g, inst.commodities.size(), L.problem);
    sol.status = raw.status;
    sol.gap = raw.gap;
    sol.runtime_s = raw.runtime_s;

    for (std::size_t f = 0; f < L.power.size(); ++f) {
        const PowerVars& pv = L.power[f];
        double p = 0.0;
        if (!pv.lambda.empty()) {
            std::size_t best = 0;
            for (std::size_t l = 1; l < pv.lambda.size(); ++l)
                if (x[pv.lambda[l]] > x[pv.lambda[best]]) best = l;
            p = pv.levels_mw[best];
        } else if (pv.continuous >= 0) {
            p = std::clamp(x[pv.continuous], 0.0, inst.radio.p_max_mw);
            if (p < 1e-9 * inst.radio.p_max_mw) p = 0.0;
        } else {
            p = pv.fixed_mw;
            if (energy && !on(x, pv.active)) p = 0.0;
        }
        sol.power_mw[f] = p;
        sol.active[f] = energy ? (on(x, pv.active) ? 1 : 0) : (p > 0.0 ? 1 : 0);
        if (sol.active[f] != (p > 0.0 ? 1 : 0)) mismatch("activation disagrees with power on frontend ordinal " + std::to_string(f));
    }

    const double z = energy ? 0.0 : std::max(0.0, x[L.z]);
    const bool serve_all = energy || z > 1e-9;
    std::vector<char> chosen(g.edge_count(), 0);
    for (std::size_t j = 0; j < L.commodities.size() && serve_all; ++j) {
        const std::size_t k = L.commodities[j];
        const Commodity& com = inst.commodities[k];
        std::size_t v = g.index_of(com.dest);
        std::size_t steps = 0;
        while (v != g.donor_index()) {
            std::ptrdiff_t parent = -1;
            for (auto e : g.in_edges(v)) {
                if (!on(x, L.f[e])) continue;
                if (parent >= 0) mismatch("node " + std::to_string(g.node_at(v).id) + " has two chosen parents");
                parent = static_cast<std::ptrdiff_t>(e);
            }
            if (parent < 0 || ++steps > g.node_count())
                mismatch("commodity " + std::to_string(com.id) + " is not connected to the donor");
            const auto e = static_cast<std::size_t>(parent);
            chosen[e] = 1;
            sol.flows[k][e] = energy ? 1.0 : z;
            v = g.index_of(g.edge_at(e).src);
        }
        sol.ue_rate_mbps[k] = energy ? com.demand_mbps : z;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (!chosen[e]) continue;
        sol.chosen_edges.push_back(e);
        if (L.alpha[e] >= 0) sol.airtime[e] = std::clamp(x[L.alpha[e]], 0.0, 1.0);
    }

    const auto truth = evaluate_links(inst, sol.power_mw);
    for (auto e : sol.chosen_edges) {
        if (L.alpha[e] < 0) continue;
        int level = -1;
        for (std::size_t i = 0; i < L.phi[e].size() && on(x, L.phi[e][i]); ++i) level = static_cast<int>(i);
        const int actual = truth[e].level ? *truth[e].level : -1;
        if (level > actual) {
            std::ostringstream msg;
            msg << "edge " << g.edge_at(e).src << "->" << g.edge_at(e).dst << " claims level " << level
                << " but the recomputed SINR supports " << actual;
            mismatch(msg.str());
        }
        sol.mcs_level[e] = level;
        sol.link_rate_mbps[e] = level >= 0 ? sol.airtime[e] * inst.table.entries[level].capacity_mbps : 0.0;
    }

    sol.objective = raw.objective;
    if (!energy) {
        sol.objective = z;
        sol.min_rate_mbps = z;
    } else {
        double m = inst.commodities.empty() ? 0.0 : std::numeric_limits<double>::infinity();
        for (double r : sol.ue_rate_mbps) m = std::min(m, r);
        sol.min_rate_mbps = m;
    }
    sol.p_total_w = total_power(g, sol, inst.power_model).total_w;

    const ValidationReport report = validate_solution(inst, sol);
    if (!report.ok) {
        std::ostringstream msg;
        msg << "extracted solution fails validation:";
        for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i)
            msg << ' ' << to_string(report.violations[i].rule) << '(' << report.violations[i].location << ", "
                << report.violations[i].magnitude << ')';
        mismatch(msg.str());
    }
    return sol;
}

NetworkSolution solve_problem(const ProblemInstance& instance, ProblemKind problem, const SolverOptions& options,
                              SolverBackend& backend) {
    const BuiltModel model = problem == ProblemKind::Throughput ? build_throughput_model(instance, options)
                                                                : build_energy_model(instance, options);
    const RawSolution raw = solve(model.ir, options, backend);
    if (!raw.has_solution) {
        NetworkSolution none = empty_solution(instance.graph, instance.commodities.size(), problem);
        none.status = raw.status;
        none.runtime_s = raw.runtime_s;
        return none;
    }
    return extract_solution(raw, model, instance);
}

}  // namespace iabopt
