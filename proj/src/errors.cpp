#include "robinspec/errors.hpp"

namespace robinspec {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonRegularCurve: return "NonRegularCurve";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::DegenerateMaximum: return "DegenerateMaximum";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::WeightNotPositive: return "WeightNotPositive";
        case ErrorCode::NonNegativeGamma: return "NonNegativeGamma";
        case ErrorCode::MissingCoefficients: return "MissingCoefficients";
        case ErrorCode::JetTooShort: return "JetTooShort";
        case ErrorCode::InternalSolvabilityFailure: return "InternalSolvabilityFailure";
        case ErrorCode::EikonalNotSolvable: return "EikonalNotSolvable";
        case ErrorCode::OrderUnavailable: return "OrderUnavailable";
        case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
        case ErrorCode::CollarTooDeep: return "CollarTooDeep";
        case ErrorCode::TruncationSuspect: return "TruncationSuspect";
        case ErrorCode::BracketFailure: return "BracketFailure";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace robinspec
