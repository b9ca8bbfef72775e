#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robinspec {

enum class ErrorCode {
    InvalidArgument = 1,
    NonRegularCurve,
    NotClosed,
    DegenerateMaximum,
    NotOrthogonal,
    NoRoot,
    WeightNotPositive,
    NonNegativeGamma,
    MissingCoefficients,
    JetTooShort,
    InternalSolvabilityFailure,
    EikonalNotSolvable,
    OrderUnavailable,
    ResolutionTooLow,
    CollarTooDeep,
    TruncationSuspect,
    BracketFailure,
    NotConverged,
    InsufficientPoints,
    IoFailure,
    ParseError,
    Internal,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace robinspec
