#include "iabopt/error.hpp"

namespace iabopt {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::IllegalEdgeEndpoints: return "IllegalEdgeEndpoints";
        case ErrorCode::MissingDonor: return "MissingDonor";
        case ErrorCode::OrphanFrontend: return "OrphanFrontend";
        case ErrorCode::DisconnectedUe: return "DisconnectedUe";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::OutOfModelRange: return "OutOfModelRange";
        case ErrorCode::NonMonotoneTable: return "NonMonotoneTable";
        case ErrorCode::BadRow: return "BadRow";
        case ErrorCode::PowerOutOfRange: return "PowerOutOfRange";
        case ErrorCode::InconsistentSolution: return "InconsistentSolution";
        case ErrorCode::ZeroPower: return "ZeroPower";
        case ErrorCode::UnsupportedMode: return "UnsupportedMode";
        case ErrorCode::EmptyCommodities: return "EmptyCommodities";
        case ErrorCode::DemandMissing: return "DemandMissing";
        case ErrorCode::NonPositiveBigM: return "NonPositiveBigM";
        case ErrorCode::UnboundedContinuous: return "UnboundedContinuous";
        case ErrorCode::BackendError: return "BackendError";
        case ErrorCode::ExtractionMismatch: return "ExtractionMismatch";
        case ErrorCode::NoFeasibleStart: return "NoFeasibleStart";
        case ErrorCode::DemandExceedsMaxMin: return "DemandExceedsMaxMin";
        case ErrorCode::NoFeasibleWithinKmax: return "NoFeasibleWithinKmax";
        case ErrorCode::ZeroCapacityLink: return "ZeroCapacityLink";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NoFeasible: return "NoFeasible";
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::DuplicateHour: return "DuplicateHour";
        case ErrorCode::MissingHour: return "MissingHour";
        case ErrorCode::EmptyScenario: return "EmptyScenario";
        case ErrorCode::EmptyResults: return "EmptyResults";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace iabopt
