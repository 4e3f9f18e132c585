#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permdec {

enum class ErrorCode {
    InvalidArgument,
    SizeMismatch,
    DimensionMismatch,
    IoFailure,
    NonFiniteValue,
    EmptySelection,
    OutOfRange,
    MissingClassSeeds,
    NoUsableFeatures,
    TooFewPoints,
    DuplicateIntensity,
    NonMonotone,
    NonPositivePermeability,
    PorosityNotSpecified,
    IncompleteTable,
    NonConvergence,
};

constexpr std::string_view to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::MissingClassSeeds: return "MissingClassSeeds";
        case ErrorCode::NoUsableFeatures: return "NoUsableFeatures";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::DuplicateIntensity: return "DuplicateIntensity";
        case ErrorCode::NonMonotone: return "NonMonotone";
        case ErrorCode::NonPositivePermeability: return "NonPositivePermeability";
        case ErrorCode::PorosityNotSpecified: return "PorosityNotSpecified";
        case ErrorCode::IncompleteTable: return "IncompleteTable";
        case ErrorCode::NonConvergence: return "NonConvergence";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace permdec
