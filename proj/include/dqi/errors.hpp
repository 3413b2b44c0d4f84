#pragma once

#include <stdexcept>
#include <string>

namespace dqi {

/// Bad argument to a library operation (out-of-range index, invalid shape
/// parameter, mismatched dimensions, ...).
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation produced something unusable (non-finite integrand value, ...).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A radial function came out non-positive or non-finite, so the evaluated
/// expression does not describe a star body.
struct StarBodyError : EvalError {
  using EvalError::EvalError;
};

/// Problem in a run configuration (unknown key, undefined body name, bad
/// ladder, ...). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dqi
