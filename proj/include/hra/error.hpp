#ifndef HRA_ERROR_HPP
#define HRA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hra {

/// Every failure the library can report. The CLI maps these onto exit codes
/// through error_category().
enum class ErrorKind {
    DomainViolation,
    DegenerateDomain,
    ZeroUpperBound,
    DegenerateIdeals,
    ShapeMismatch,
    InvalidWeights,
    NonFiniteValue,
    DuplicateLabel,
    EmptyMatrix,
    EmptyRuns,
    MissingCell,
    DuplicateTuple,
    ParseError,
    UnknownLayout,
    ChecksumMismatch,
    NetworkError,
    IoError,
};

enum class ErrorCategory { Parse, Validation, Io };

constexpr ErrorCategory error_category(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownLayout:
    case ErrorKind::EmptyRuns:
    case ErrorKind::DuplicateTuple:
        return ErrorCategory::Parse;
    case ErrorKind::NetworkError:
    case ErrorKind::IoError:
        return ErrorCategory::Io;
    default:
        return ErrorCategory::Validation;
    }
}

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::ZeroUpperBound: return "ZeroUpperBound";
    case ErrorKind::DegenerateIdeals: return "DegenerateIdeals";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::EmptyRuns: return "EmptyRuns";
    case ErrorKind::MissingCell: return "MissingCell";
    case ErrorKind::DuplicateTuple: return "DuplicateTuple";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownLayout: return "UnknownLayout";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return error_category(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace hra

#endif  // HRA_ERROR_HPP
