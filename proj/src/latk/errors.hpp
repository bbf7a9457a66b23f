#ifndef LATK_ERRORS_HPP
#define LATK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latk {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A series failed to reach the requested tolerance within its term cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bisection predicate changed sign more than once across the final bracket.
struct ThresholdAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace latk

#endif
