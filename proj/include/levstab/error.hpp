#pragma once

#include <stdexcept>
#include <string>

namespace levstab {

/// Error category; the numeric values double as CLI exit codes.
enum class ErrorKind : int {
    Validation = 1,
    BadInput = 2,
    Numerical = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Thrown when a parameter set violates one of its invariants.
class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(ErrorKind::BadInput, what) {}
};

/// Thrown by the plant when an airgap reaches zero.
class GapClosed : public Error {
public:
    GapClosed(double t, const std::string& what) : Error(ErrorKind::Numerical, what), time_(t) {}
    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

}  // namespace levstab
