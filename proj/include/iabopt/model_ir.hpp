#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace iabopt {

using VarId = int;

enum class VarKind { Continuous, Binary };
enum class RowSense { Le, Eq, Ge };
enum class ObjSense { Minimize, Maximize };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = 0.0;
};

struct Term {
    VarId var = -1;
    double coeff = 0.0;
};

/// Sum of coeff * var plus a constant.
struct LinearExpr {
    std::vector<Term> terms;
    double constant = 0.0;

    LinearExpr() = default;
    explicit LinearExpr(double c) : constant(c) {}

    LinearExpr& add(VarId var, double coeff) {
        if (coeff != 0.0) terms.push_back({var, coeff});
        return *this;
    }
    LinearExpr& add(const LinearExpr& other, double scale = 1.0);
    double evaluate(std::span<const double> values) const;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;  // merged, one term per variable
    RowSense sense = RowSense::Le;
    double rhs = 0.0;
};

/// Solver-agnostic mixed-integer linear model with a name registry.
class ModelIR {
public:
    /// Throws InvalidArgument on duplicate names or lb > ub.
    VarId add_variable(std::string name, VarKind kind, double lb, double ub);
    VarId add_binary(std::string name) { return add_variable(std::move(name), VarKind::Binary, 0.0, 1.0); }

    /// Moves the expression constant to the right-hand side and merges terms.
    void add_constraint(std::string name, const LinearExpr& expr, RowSense sense, double rhs);
    void add_constraint(Constraint row);
    void set_objective(ObjSense sense, LinearExpr expr);

    std::optional<VarId> find(std::string_view name) const;
    const Variable& variable(VarId id) const { return vars_.at(static_cast<std::size_t>(id)); }
    void set_bounds(VarId id, double lb, double ub);

    std::span<const Variable> variables() const noexcept { return vars_; }
    std::span<const Constraint> constraints() const noexcept { return rows_; }
    const LinearExpr& objective() const noexcept { return objective_; }
    ObjSense objective_sense() const noexcept { return sense_; }
    std::size_t binary_count() const noexcept;

    double objective_value(std::span<const double> values) const { return objective_.evaluate(values); }
    /// Largest bound or row violation of a point (0 when feasible).
    double max_violation(std::span<const double> values, double integrality_tol = 1e-6) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::unordered_map<std::string, VarId> names_;
    LinearExpr objective_;
    ObjSense sense_ = ObjSense::Minimize;
};

/// Row activity of a constraint.
double row_activity(const Constraint& row, std::span<const double> values);

/// CPLEX-LP text of the model (for external debugging).
std::string to_lp_format(const ModelIR& model);

enum class IndicatorSense {
    GeWhenOn,   // indicator = 1  =>  expr >= 0
    LeWhenOff,  // indicator = 0  =>  expr <= 0
};

/// Big-M form of an implication: GeWhenOn gives expr >= -M (1 - phi),
/// LeWhenOff gives expr <= M phi. Throws NonPositiveBigM when big_m <= 0.
Constraint linearize_indicator(const LinearExpr& expr, VarId indicator, IndicatorSense sense, double big_m,
                               std::string name = {});

struct ProductLinearization {
    VarId aux = -1;
    std::vector<Constraint> rows;
};

/// aux = bin * cont for cont in [0, cont_upper]: aux <= cont, aux <= ub bin,
/// aux >= cont - ub (1 - bin), aux >= 0. Adds the aux variable to the model
/// and returns the rows (not yet added). Throws UnboundedContinuous.
ProductLinearization linearize_binary_product(ModelIR& model, VarId binary_var, VarId cont_var, double cont_upper,
                                              std::string aux_name);

}  // namespace iabopt
