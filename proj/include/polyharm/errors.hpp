#pragma once

#include <stdexcept>
#include <string>

namespace polyharm {

// Every failure raised by the library derives from Error and knows the
// process exit status the CLI reports for it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

class ParameterError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

// Point outside the closed unit ball, or a field sampled off its grid.
class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class SingularityError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// The requested experiment does not apply to the given regime.
class NotApplicableError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : Error(what), last_residual_(last_residual) {}
    int exit_code() const noexcept override { return 3; }
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

class ResolutionError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class InvariantViolation : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

}  // namespace polyharm
