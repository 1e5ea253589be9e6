#pragma once

#include <stdexcept>
#include <string>

namespace uavcov {

/// Invalid configuration or scenario input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function (e.g. distance beyond the cylinder).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The closed-form branch structure assumes H < R.
class UnsupportedGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative evaluation failed to converge. Carries the best value reached
/// and an estimate of its error.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double partial_value, double error_bound)
        : std::runtime_error(what), partial_value_(partial_value), error_bound_(error_bound) {}

    double partial_value() const noexcept { return partial_value_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double partial_value_;
    double error_bound_;
};

/// A computed quantity violated a hard invariant by more than round-off.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace uavcov
