#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmq {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation called in a state where its precondition does not hold.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A non-finite value appeared while time stepping.
class NumericalInstability : public std::runtime_error {
public:
    NumericalInstability(std::size_t node, const std::string& what)
        : std::runtime_error(what + " (node " + std::to_string(node) + ")"), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Step halving ran out before reaching the requested tolerance.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(double last_difference, const std::string& what)
        : std::runtime_error(what), last_difference_(last_difference) {}

    double last_difference() const noexcept { return last_difference_; }

private:
    double last_difference_;
};

/// Root bracket could not be established.
class SearchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not meet its error target.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Explicit propagation lost unitarity beyond tolerance; the step is too large.
class StepSizeError : public std::runtime_error {
public:
    StepSizeError(double drift, const std::string& what)
        : std::runtime_error(what), drift_(drift) {}

    double drift() const noexcept { return drift_; }

private:
    double drift_;
};

}  // namespace nmq
