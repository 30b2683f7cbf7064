#pragma once

#include <stdexcept>
#include <string>

namespace survnn {

// Base class for all survnn errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed inputs: shape mismatches, non-finite values, empty data.
struct InvalidInputError : Error {
    using Error::Error;
};

// Training objective undefined: no uncensored samples in the training set.
struct UndefinedLossError : Error {
    using Error::Error;
};

// Metric undefined: no orderable pairs.
struct UndefinedMetricError : Error {
    using Error::Error;
};

// Training produced a non-finite loss; message names the epoch.
struct DivergenceError : Error {
    using Error::Error;
};

// File/parse problems; message carries row/column coordinates.
struct ParseError : Error {
    using Error::Error;
};

// Synthetic data generation could not be calibrated.
struct GenerationError : Error {
    using Error::Error;
};

// Hyperparameter search finished with no successful trial.
struct OptimizationFailedError : Error {
    using Error::Error;
};

// Linear algebra failure (e.g. kernel matrix singular after jitter).
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace survnn
