#pragma once

#include <stdexcept>

namespace levyest {

// Error taxonomy.  Configuration and model problems are programming or
// input mistakes and map to CLI exit code 2; capacity overruns (requests
// beyond what the numeric representation can honour) map to exit code 3.

struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct invalid_model_error : config_error {
  using config_error::config_error;
};

struct invalid_input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace levyest
