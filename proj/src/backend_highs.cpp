#include <chrono>
#include <cmath>
#include <limits>

#include <Highs.h>

#include "iabopt/backend.hpp"
#include "iabopt/error.hpp"

namespace iabopt {

void validate(const SolverOptions& options) {
    if (!(options.time_limit_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "time_limit_s must be positive");
    if (!(options.rel_gap >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rel_gap must be >= 0");
    if (options.big_m_cap && !(*options.big_m_cap > 0.0))
        throw Error(ErrorCode::InvalidArgument, "big_m_cap must be positive");
}

namespace {

HighsModel to_highs(const ModelIR& model) {
    HighsModel hm;
    HighsLp& lp = hm.lp_;
    const auto vars = model.variables();
    const auto rows = model.constraints();
    lp.num_col_ = static_cast<HighsInt>(vars.size());
    lp.num_row_ = static_cast<HighsInt>(rows.size());
    lp.sense_ = model.objective_sense() == iabopt::ObjSense::Maximize ? ::ObjSense::kMaximize : ::ObjSense::kMinimize;
    lp.offset_ = model.objective().constant;
    lp.col_cost_.assign(vars.size(), 0.0);
    for (const Term& t : model.objective().terms) lp.col_cost_[static_cast<std::size_t>(t.var)] += t.coeff;
    lp.integrality_.assign(vars.size(), HighsVarType::kContinuous);
    bool any_integer = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        lp.col_lower_.push_back(vars[i].lb);
        lp.col_upper_.push_back(vars[i].ub);
        if (vars[i].kind == VarKind::Binary) {
            lp.integrality_[i] = HighsVarType::kInteger;
            any_integer = true;
        }
    }
    if (!any_integer) lp.integrality_.clear();
    const double inf = kHighsInf;
    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.num_col_ = lp.num_col_;
    lp.a_matrix_.num_row_ = lp.num_row_;
    lp.a_matrix_.start_.assign(1, 0);  // HighsSparseMatrix starts out as {0}
    lp.a_matrix_.index_.clear();
    lp.a_matrix_.value_.clear();
    for (const Constraint& row : rows) {
        for (const Term& t : row.terms) {
            lp.a_matrix_.index_.push_back(t.var);
            lp.a_matrix_.value_.push_back(t.coeff);
        }
        lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
        lp.row_lower_.push_back(row.sense == RowSense::Le ? -inf : row.rhs);
        lp.row_upper_.push_back(row.sense == RowSense::Ge ? inf : row.rhs);
    }
    return hm;
}

}  // namespace

RawSolution HighsBackend::solve(const ModelIR& model, const SolverOptions& options) {
    validate(options);
    RawSolution raw;
    const auto start = std::chrono::steady_clock::now();

    Highs highs;
    highs.setOptionValue("output_flag", options.verbose);
    highs.setOptionValue("threads", 1);
    highs.setOptionValue("parallel", "off");
    highs.setOptionValue("random_seed", static_cast<HighsInt>(options.seed % 2147483647u));
    highs.setOptionValue("time_limit", options.time_limit_s);
    highs.setOptionValue("mip_rel_gap", options.rel_gap);
    highs.setOptionValue("mip_abs_gap", 1e-9);
    // Tight integrality keeps big-M rows honest after rounding binaries.
    highs.setOptionValue("mip_feasibility_tolerance", 1e-9);
    highs.setOptionValue("primal_feasibility_tolerance", 1e-9);

    if (highs.passModel(to_highs(model)) == HighsStatus::kError) {
        raw.message = "HiGHS rejected the model";
        throw Error(ErrorCode::BackendError, raw.message);
    }
    const HighsStatus run = highs.run();
    raw.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const HighsModelStatus ms = highs.getModelStatus();
    raw.message = highs.modelStatusToString(ms);
    if (run == HighsStatus::kError && ms != HighsModelStatus::kTimeLimit)
        throw Error(ErrorCode::BackendError, "HiGHS failed: " + raw.message);

    const HighsInfo& info = highs.getInfo();
    raw.has_solution = info.primal_solution_status == kSolutionStatusFeasible;
    if (raw.has_solution) {
        raw.values = highs.getSolution().col_value;
        raw.objective = info.objective_function_value;
        if (model.binary_count() > 0 && std::isfinite(info.mip_gap)) raw.gap = info.mip_gap;
    }
    switch (ms) {
        case HighsModelStatus::kOptimal: raw.status = SolveStatus::Optimal; break;
        case HighsModelStatus::kInfeasible: raw.status = SolveStatus::Infeasible; break;
        case HighsModelStatus::kTimeLimit:
        case HighsModelStatus::kIterationLimit:
        case HighsModelStatus::kSolutionLimit:
        case HighsModelStatus::kInterrupt:
            raw.status = raw.has_solution ? SolveStatus::Feasible : SolveStatus::TimeLimit;
            break;
        case HighsModelStatus::kUnboundedOrInfeasible:
            raw.status = SolveStatus::Infeasible;
            break;
        default:
            raw.status = SolveStatus::Error;
            break;
    }
    if (raw.status == SolveStatus::Infeasible) raw.has_solution = false;
    return raw;
}

std::unique_ptr<SolverBackend> make_default_backend() { return std::make_unique<HighsBackend>(); }

RawSolution solve(const ModelIR& model, const SolverOptions& options, SolverBackend& backend) {
    validate(options);
    return backend.solve(model, options);
}

}  // namespace iabopt
