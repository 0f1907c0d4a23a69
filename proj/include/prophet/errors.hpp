#pragma once

#include <stdexcept>
#include <string>

namespace prophet {

enum class ErrorKind {
    InvalidQuantile,
    InvalidInstance,
    InvalidParameter,
    InvalidDistribution,
    PolicyMismatch,
    TooLargeInstance,
    Config,
};

inline const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidQuantile: return "invalid-quantile";
    case ErrorKind::InvalidInstance: return "invalid-instance";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidDistribution: return "invalid-distribution";
    case ErrorKind::PolicyMismatch: return "policy-mismatch";
    case ErrorKind::TooLargeInstance: return "too-large-instance";
    case ErrorKind::Config: return "config-error";
    }
    return "error";
}

} // namespace prophet
