#pragma once

#include <stdexcept>
#include <string>

namespace odholo {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Low-level linear-algebra failure (non-convergence, non-finite input).
class KernelError : public Error {
public:
    using Error::Error;
};

/// A value-level contract was violated (shape mismatch, broken invariant,
/// precondition not met).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numeric self-check failed (unitarity defect, circuit-vs-formula
/// mismatch, integrator tolerance not met).
class NumericCheckError : public Error {
public:
    using Error::Error;
};

/// Something that is mathematically guaranteed did not hold numerically.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration problems (unknown keys, missing files, bad values).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace odholo
