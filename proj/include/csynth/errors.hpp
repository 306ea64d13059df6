#pragma once

#include <stdexcept>
#include <string>

namespace csynth {

// Bad user input: malformed config, inconsistent dimensions, out-of-grid
// initial states. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Internal failure during solving. CLI exit code 3.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource budget was exceeded (oracle table size, BDD
// variable count, flat-baseline vector store). CLI exit code 4.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace csynth
