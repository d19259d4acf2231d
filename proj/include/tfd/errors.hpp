// errors.hpp — exception types shared by the tfd library and its CLI

#pragma once

#include <stdexcept>

namespace tfd {

// Physical or numerical input that violates a documented invariant.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quantum numbers outside their allowed range.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Valid input whose evaluation failed numerically.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quantity that diverges for the given input (zero mode frequency, arctanh(1)).
class DivergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

// C(t) = 0 with a nonvanishing numerator in the rate.
class SingularRateError : public NumericError {
public:
    using NumericError::NumericError;
};

// A series too short or too featureless for the requested estimate.
class InsufficientDataError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace tfd
