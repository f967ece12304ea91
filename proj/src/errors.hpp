#pragma once

#include <stdexcept>
#include <string>

namespace elmlc {

// Error taxonomy. Each class maps onto one elmlc_status code in the C API
// and one CLI exit code (config=2, data=3, numeric=4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad arguments, infeasible partitions, malformed
// experiment configs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Dataset problems: missing files, parse failures, values outside a
// function's domain.
class DataError : public Error {
 public:
  using Error::Error;
};

// Numerical failures: decomposition non-convergence, non-finite results.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Dimension mismatches between operands.
class ShapeError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Operation on a model in the wrong state (e.g. predict before fit).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace elmlc
