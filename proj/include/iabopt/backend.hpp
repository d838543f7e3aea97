#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iabopt/model_ir.hpp"
#include "iabopt/solution.hpp"

namespace iabopt {

struct SolverOptions {
    double time_limit_s = 60.0;
    double rel_gap = 1e-9;
    std::optional<double> big_m_cap;
    unsigned seed = 0;
    bool verbose = false;
};

/// Throws InvalidArgument when time_limit_s <= 0 or rel_gap < 0.
void validate(const SolverOptions& options);

struct RawSolution {
    SolveStatus status = SolveStatus::Error;
    bool has_solution = false;
    std::vector<double> values;
    double objective = 0.0;
    std::optional<double> gap;
    double runtime_s = 0.0;
    std::string message;
};

/// A MILP engine. Instances are single-owner; use one per thread.
class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual RawSolution solve(const ModelIR& model, const SolverOptions& options) = 0;
};

/// HiGHS branch-and-cut, single-threaded and seeded for determinism.
class HighsBackend final : public SolverBackend {
public:
    std::string name() const override { return "highs"; }
    RawSolution solve(const ModelIR& model, const SolverOptions& options) override;
};

std::unique_ptr<SolverBackend> make_default_backend();

/// Convenience wrapper: validates options, then runs the backend.
RawSolution solve(const ModelIR& model, const SolverOptions& options, SolverBackend& backend);

}  // namespace iabopt
