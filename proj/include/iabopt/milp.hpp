#pragma once

#include <vector>

#include "iabopt/backend.hpp"
#include "iabopt/instance.hpp"
#include "iabopt/model_ir.hpp"
#include "iabopt/solution.hpp"

namespace iabopt {

/// Normalized margin on the "level unlocked" side of every threshold
/// indicator: phi = 1 requires S - th I >= margin * S_max, so an extracted
/// level always survives an exact recomputation.
inline constexpr double kIndicatorMargin = 1e-6;

struct BigM {
    double lower = 0.0;  // >= th_i * max I
    double upper = 0.0;  // >= max S
};

/// Per-level big-M bounds of a wireless edge with every frontend at the
/// upper bound of its power plan, capped by options.big_m_cap.
std::vector<BigM> compute_big_m(const ProblemInstance& instance, std::size_t edge, const SolverOptions& options = {});

/// How a frontend's transmit power appears in a model.
struct PowerVars {
    double fixed_mw = 0.0;             // Fixed plans
    VarId continuous = -1;             // Continuous plans
    std::vector<VarId> lambda;         // Discrete plans, one binary per level
    std::vector<double> levels_mw;
    VarId active = -1;                 // a(v), energy problem only
};

/// Variable ids of a built model; -1 marks an absent variable.
struct ModelLayout {
    ProblemKind problem = ProblemKind::Throughput;
    VarId z = -1;
    std::vector<VarId> f;                   // per edge
    std::vector<VarId> alpha;               // per edge, wireless only
    std::vector<VarId> c;                   // per edge, wireless only
    std::vector<std::vector<VarId>> phi;    // per edge, per level
    std::vector<std::size_t> commodities;   // positions in instance.commodities that are modeled
    std::vector<std::vector<VarId>> fk;     // per modeled commodity, per edge
    std::vector<PowerVars> power;           // per frontend ordinal
};

struct BuiltModel {
    ModelIR ir;
    ModelLayout layout;
};

/// Max-min throughput model. Throws EmptyCommodities.
BuiltModel build_throughput_model(const ProblemInstance& instance, const SolverOptions& options = {});
/// Minimum-power model with demand-weighted capacities. Throws
/// UnsupportedMode for Continuous plans and DemandMissing for unset demands.
BuiltModel build_energy_model(const ProblemInstance& instance, const SolverOptions& options = {});

/// Rounds binaries, canonicalizes routing to the donor-rooted tree, checks
/// the claimed levels against a direct SINR recomputation and runs
/// validate_solution. Throws ExtractionMismatch on any disagreement.
NetworkSolution extract_solution(const RawSolution& raw, const BuiltModel& model, const ProblemInstance& instance);

/// Build, solve, extract. Infeasible and time-limited runs without an
/// incumbent come back as solutions without values.
NetworkSolution solve_problem(const ProblemInstance& instance, ProblemKind problem, const SolverOptions& options,
                              SolverBackend& backend);

}  // namespace iabopt
