#pragma once

#include <stdexcept>
#include <string>

namespace epigame {

// Bad arguments or violated preconditions.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Integration left the feasible region; usually means dt is too large.
class IntegratorInstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature could not reach the requested tolerance.
class NumericalFailureError : public std::runtime_error {
public:
    NumericalFailureError(const std::string& message, double best_estimate,
                          double error_estimate, int evaluations)
        : std::runtime_error(message),
          best_estimate(best_estimate),
          error_estimate(error_estimate),
          evaluations(evaluations)
    {
    }

    double best_estimate;
    double error_estimate;
    int evaluations;
};

// The epidemic has not reached its late-time regime at the end of the grid.
class TailDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace epigame
