#include "iabopt/model_ir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "iabopt/error.hpp"

namespace iabopt {

LinearExpr& LinearExpr::add(const LinearExpr& other, double scale) {
    for (const Term& t : other.terms) add(t.var, t.coeff * scale);
    constant += other.constant * scale;
    return *this;
}

double LinearExpr::evaluate(std::span<const double> values) const {
    double v = constant;
    for (const Term& t : terms) v += t.coeff * values[static_cast<std::size_t>(t.var)];
    return v;
}

VarId ModelIR::add_variable(std::string name, VarKind kind, double lb, double ub) {
    if (lb > ub) throw Error(ErrorCode::InvalidArgument, "variable " + name + " has lb > ub");
    if (names_.contains(name)) throw Error(ErrorCode::InvalidArgument, "duplicate variable name " + name);
    const VarId id = static_cast<VarId>(vars_.size());
    names_.emplace(name, id);
    vars_.push_back({std::move(name), kind, lb, ub});
    return id;
}

void ModelIR::add_constraint(std::string name, const LinearExpr& expr, RowSense sense, double rhs) {
    Constraint row;
    row.name = std::move(name);
    row.sense = sense;
    row.rhs = rhs - expr.constant;
    row.terms = expr.terms;
    add_constraint(std::move(row));
}

void ModelIR::add_constraint(Constraint row) {
    std::map<VarId, double> merged;
    for (const Term& t : row.terms) {
        if (t.var < 0 || static_cast<std::size_t>(t.var) >= vars_.size())
            throw Error(ErrorCode::InvalidArgument, "constraint " + row.name + " references an undeclared variable");
        merged[t.var] += t.coeff;
    }
    row.terms.clear();
    for (auto [var, coeff] : merged)
        if (coeff != 0.0) row.terms.push_back({var, coeff});
    if (row.name.empty()) row.name = "r" + std::to_string(rows_.size());
    rows_.push_back(std::move(row));
}

void ModelIR::set_objective(ObjSense sense, LinearExpr expr) {
    for (const Term& t : expr.terms)
        if (t.var < 0 || static_cast<std::size_t>(t.var) >= vars_.size())
            throw Error(ErrorCode::InvalidArgument, "objective references an undeclared variable");
    sense_ = sense;
    objective_ = std::move(expr);
}

std::optional<VarId> ModelIR::find(std::string_view name) const {
    auto it = names_.find(std::string(name));
    if (it == names_.end()) return std::nullopt;
    return it->second;
}

void ModelIR::set_bounds(VarId id, double lb, double ub) {
    if (lb > ub) throw Error(ErrorCode::InvalidArgument, "set_bounds with lb > ub");
    auto& v = vars_.at(static_cast<std::size_t>(id));
    v.lb = lb;
    v.ub = ub;
}

std::size_t ModelIR::binary_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.kind == VarKind::Binary; }));
}

double row_activity(const Constraint& row, std::span<const double> values) {
    double a = 0.0;
    for (const Term& t : row.terms) a += t.coeff * values[static_cast<std::size_t>(t.var)];
    return a;
}

double ModelIR::max_violation(std::span<const double> values, double integrality_tol) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const Variable& v = vars_[i];
        worst = std::max({worst, v.lb - values[i], values[i] - v.ub});
        if (v.kind == VarKind::Binary) {
            const double frac = std::abs(values[i] - std::round(values[i]));
            if (frac > integrality_tol) worst = std::max(worst, frac);
        }
    }
    for (const Constraint& row : rows_) {
        const double a = row_activity(row, values);
        switch (row.sense) {
            case RowSense::Le: worst = std::max(worst, a - row.rhs); break;
            case RowSense::Ge: worst = std::max(worst, row.rhs - a); break;
            case RowSense::Eq: worst = std::max(worst, std::abs(a - row.rhs)); break;
        }
    }
    return worst;
}

namespace {

void write_terms(std::ostringstream& out, const ModelIR& model, std::span<const Term> terms) {
    if (terms.empty()) {
        out << " 0 " << model.variable(0).name;
        return;
    }
    int on_line = 0;
    for (const Term& t : terms) {
        out << (t.coeff < 0 ? " - " : " + ") << std::abs(t.coeff) << ' ' << model.variable(t.var).name;
        if (++on_line % 6 == 0) out << "\n   ";
    }
}

}  // namespace

std::string to_lp_format(const ModelIR& model) {
    std::ostringstream out;
    out.precision(17);
    out << (model.objective_sense() == ObjSense::Maximize ? "Maximize\n" : "Minimize\n") << " obj:";
    write_terms(out, model, model.objective().terms);
    if (model.objective().constant != 0.0)
        out << (model.objective().constant < 0 ? " - " : " + ") << std::abs(model.objective().constant);
    out << "\nSubject To\n";
    for (const Constraint& row : model.constraints()) {
        out << ' ' << row.name << ':';
        write_terms(out, model, row.terms);
        out << (row.sense == RowSense::Le ? " <= " : row.sense == RowSense::Ge ? " >= " : " = ") << row.rhs << '\n';
    }
    out << "Bounds\n";
    for (const Variable& v : model.variables()) {
        if (v.kind == VarKind::Binary && v.lb == 0.0 && v.ub == 1.0) continue;
        const bool lb_inf = v.lb == -std::numeric_limits<double>::infinity();
        const bool ub_inf = v.ub == std::numeric_limits<double>::infinity();
        if (lb_inf && ub_inf) out << ' ' << v.name << " free\n";
        else if (lb_inf) out << " -inf <= " << v.name << " <= " << v.ub << '\n';
        else if (ub_inf) out << ' ' << v.name << " >= " << v.lb << '\n';
        else out << ' ' << v.lb << " <= " << v.name << " <= " << v.ub << '\n';
    }
    bool header = false;
    for (const Variable& v : model.variables()) {
        if (v.kind != VarKind::Binary) continue;
        if (!header) out << "Binaries\n";
        header = true;
        out << ' ' << v.name << '\n';
    }
    out << "End\n";
    return out.str();
}

Constraint linearize_indicator(const LinearExpr& expr, VarId indicator, IndicatorSense sense, double big_m,
                               std::string name) {
    if (!(big_m > 0.0) || !std::isfinite(big_m))
        throw Error(ErrorCode::NonPositiveBigM, "big-M must be positive and finite, got " + std::to_string(big_m));
    Constraint row;
    row.name = std::move(name);
    row.terms = expr.terms;
    if (sense == IndicatorSense::GeWhenOn) {
        // expr >= -M (1 - phi)  <=>  expr - M phi >= -M
        row.terms.push_back({indicator, -big_m});
        row.sense = RowSense::Ge;
        row.rhs = -big_m - expr.constant;
    } else {
        // expr <= M phi  <=>  expr - M phi <= 0
        row.terms.push_back({indicator, -big_m});
        row.sense = RowSense::Le;
        row.rhs = -expr.constant;
    }
    return row;
}

ProductLinearization linearize_binary_product(ModelIR& model, VarId binary_var, VarId cont_var, double cont_upper,
                                              std::string aux_name) {
    if (!std::isfinite(cont_upper) || cont_upper < 0.0)
        throw Error(ErrorCode::UnboundedContinuous, "binary product needs a finite upper bound on " +
                                                        model.variable(cont_var).name);
    ProductLinearization out;
    out.aux = model.add_variable(aux_name, VarKind::Continuous, 0.0, cont_upper);
    const std::string& n = model.variable(out.aux).name;
    out.rows.push_back({n + "_le_x", {{out.aux, 1.0}, {cont_var, -1.0}}, RowSense::Le, 0.0});
    out.rows.push_back({n + "_le_b", {{out.aux, 1.0}, {binary_var, -cont_upper}}, RowSense::Le, 0.0});
    out.rows.push_back({n + "_ge", {{out.aux, 1.0}, {cont_var, -1.0}, {binary_var, -cont_upper}}, RowSense::Ge,
                        -cont_upper});
    return out;
}

}  // namespace iabopt
