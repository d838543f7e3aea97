#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iabopt {

enum class ErrorCode {
    // graph
    DuplicateId,
    IllegalEdgeEndpoints,
    MissingDonor,
    OrphanFrontend,
    DisconnectedUe,
    ParseError,
    // channel / capacity / energy
    OutOfModelRange,
    NonMonotoneTable,
    BadRow,
    PowerOutOfRange,
    InconsistentSolution,
    ZeroPower,
    // milp
    UnsupportedMode,
    EmptyCommodities,
    DemandMissing,
    NonPositiveBigM,
    UnboundedContinuous,
    BackendError,
    ExtractionMismatch,
    // heuristics
    NoFeasibleStart,
    DemandExceedsMaxMin,
    NoFeasibleWithinKmax,
    // oracle
    ZeroCapacityLink,
    TooLarge,
    NoFeasible,
    // scenario / cli
    BadRange,
    DuplicateHour,
    MissingHour,
    EmptyScenario,
    EmptyResults,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace iabopt
