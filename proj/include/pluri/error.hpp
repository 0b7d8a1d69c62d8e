// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pluri {

enum class ErrorKind {
    InvalidParameter,
    InvalidInput,
    ConstructionFailure,
    OutOfRange,
    DegenerateTruncation,
    GridTooNarrow,
    GridMismatch,
    PreconditionViolation,
    ModelViolation,
    Unsolvable,
    NormalizationError,
    NumericalFailure,
    Io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ConstructionFailure: return "construction-failure";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::DegenerateTruncation: return "degenerate-truncation";
    case ErrorKind::GridTooNarrow: return "grid-too-narrow";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::ModelViolation: return "model-violation";
    case ErrorKind::Unsolvable: return "unsolvable";
    case ErrorKind::NormalizationError: return "normalization-error";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond)
        fail(kind, what);
}

} // namespace pluri
