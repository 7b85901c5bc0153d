#pragma once

#include <stdexcept>
#include <string>

namespace cavitycool {

/// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at a pole of a closed-form expression.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Malformed configuration or data file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time step too coarse for the configured dynamics.
class TimeStepError : public DomainError {
public:
    TimeStepError(const std::string& what, double suggested) : DomainError(what), suggested_dt(suggested) {}
    double suggested_dt;
};

}  // namespace cavitycool
