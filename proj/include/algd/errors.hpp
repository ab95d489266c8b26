#pragma once

#include <stdexcept>
#include <string>

namespace algd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structural misuse: dimension mismatches, bad arguments, violated preconditions.
struct ConfigError : Error {
    using Error::Error;
};

/// Evaluation-time domain failure (log of a non-positive value, division by zero, ...).
struct EvalError : Error {
    using Error::Error;
};

/// Pointwise linear solve hit a (near-)singular matrix.
struct SolveError : Error {
    double condition = 0.0;
    explicit SolveError(const std::string& what, double cond) : Error(what), condition(cond) {}
};

/// Numerical integration produced non-finite values.
struct DivergenceError : Error {
    int step = -1;
    explicit DivergenceError(const std::string& what, int failing_step)
        : Error(what), step(failing_step) {}
};

} // namespace algd
