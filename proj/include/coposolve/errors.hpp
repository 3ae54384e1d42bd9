#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coposolve {

enum class ErrorKind {
    Dimension,
    Parameter,
    Capacity,
    Precondition,
    NotApplicable,
    InternalConsistency,
    Input,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI's one-line error output) can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by constructions that only make sense for matrices that are not
/// strictly copositive and admit no constant solution.
class NotApplicableError : public Error {
public:
    enum class Reason { StrictlyCopositive, ConstantSolutionExists, NoRobustInteriorDirection };

    NotApplicableError(Reason reason, const std::string& message)
        : Error(ErrorKind::NotApplicable, message), reason_(reason) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

std::string_view to_string(NotApplicableError::Reason reason);

}  // namespace coposolve
