#pragma once

#include <stdexcept>

namespace esmf {

// Caller passed data that violates an operation's precondition (wrong
// dimension, start point outside the unrelaxable region, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inconsistent solver, problem or experiment configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Unknown problem name or missing stored data.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Numerical failure the solver cannot repair.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace esmf
