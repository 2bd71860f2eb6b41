#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eitlab {

/// Failure categories raised by the numerical modules.
enum class ErrorKind {
    GridMismatch,
    GridTooSmall,
    ZeroPowerField,
    PeriodTooSmall,
    EvanescentOrder,
    NonUniqueSteadyState,
    StepSizeUnderflow,
    SpectrumTooNarrow,
    NonMonotonicScan,
    Numerical,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::GridTooSmall: return "GridTooSmall";
        case ErrorKind::ZeroPowerField: return "ZeroPowerField";
        case ErrorKind::PeriodTooSmall: return "PeriodTooSmall";
        case ErrorKind::EvanescentOrder: return "EvanescentOrder";
        case ErrorKind::NonUniqueSteadyState: return "NonUniqueSteadyState";
        case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorKind::SpectrumTooNarrow: return "SpectrumTooNarrow";
        case ErrorKind::NonMonotonicScan: return "NonMonotonicScan";
        case ErrorKind::Numerical: return "Numerical";
    }
    return "Unknown";
}

/// Numerical failure. Precondition violations on plain arguments are reported
/// with std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace eitlab
