#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iabopt/capacity.hpp"
#include "iabopt/instance.hpp"
#include "iabopt/solution.hpp"

namespace iabopt {

/// Per-edge MCS level and capacity at a power vector (wired edges: none, 0).
/// Interference comes from the instance gain matrix, i.e. the unpruned graph.
std::vector<McsLookup> evaluate_links(const ProblemInstance& instance, std::span<const double> power_mw);

enum class ViolationRule {
    Shape,
    PowerBounds,
    Activation,
    Tree,
    FlowConservation,
    AirtimeBudget,
    CapacityOverclaim,
    DemandUnmet,
    ObjectiveMismatch,
};
std::string_view to_string(ViolationRule rule) noexcept;

struct Violation {
    ViolationRule rule;
    std::string location;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    double recomputed_objective = 0.0;

    bool has(ViolationRule rule) const noexcept;
};

/// Re-checks every model constraint numerically at 1e-6 tolerance and
/// recomputes the objective (min UE rate or total power).
ValidationReport validate_solution(const ProblemInstance& instance, const NetworkSolution& sol);

/// Max-min rate on a fixed tree with fixed link capacities: airtime per link
/// is Z * downstream UEs / c(e), every node's incident airtime must fit in 1.
/// Bisection to 1e-9 absolute. Throws ZeroCapacityLink when a loaded wireless
/// edge has zero capacity.
double max_min_on_tree(const MeasurementGraph& graph, std::span<const std::size_t> tree_edges,
                       std::span<const double> capacity_mbps, std::span<const std::size_t> ue_nodes);

struct OracleResult {
    double value = 0.0;
    std::vector<double> power_mw;           // by frontend ordinal
    std::vector<std::size_t> tree_edges;    // ascending edge indices
    std::uint64_t configurations = 0;
};

inline constexpr std::uint64_t kEnumerationGuard = 1'000'000;

/// Number of (power assignment x parent choice) configurations enumerated.
std::uint64_t enumeration_size(const ProblemInstance& instance, ProblemKind problem);

/// Exhaustive max-min throughput over power candidates and parent choices.
/// Throws TooLarge above kEnumerationGuard configurations, UnsupportedMode
/// for Continuous plans. OpenMP-parallel over power assignments.
OracleResult enumerate_optimal_throughput(const ProblemInstance& instance);
/// Exhaustive minimum total power meeting every demand. Fixed plans may also
/// switch off (power 0). Throws TooLarge, UnsupportedMode or NoFeasible.
OracleResult enumerate_optimal_energy(const ProblemInstance& instance);

namespace serial {
OracleResult enumerate_optimal_throughput(const ProblemInstance& instance);
OracleResult enumerate_optimal_energy(const ProblemInstance& instance);
}  // namespace serial

}  // namespace iabopt
