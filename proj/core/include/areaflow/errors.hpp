#pragma once

#include <stdexcept>
#include <string>

namespace areaflow {

/// Malformed domain descriptor (non-positive extent, too few cells, bad dimension).
class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid solver or run configuration value.
class InvalidConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fields living on different grids, or sampled at different times.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inner iteration cap reached before the optimality certificate was met.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double residual, int iterations,
                      long step_index = -1)
      : std::runtime_error(what),
        residual_(residual),
        iterations_(iterations),
        step_index_(step_index) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }
  /// Outer time-step index, or -1 when raised by a single implicit step.
  long step_index() const noexcept { return step_index_; }

 private:
  double residual_;
  int iterations_;
  long step_index_;
};

}  // namespace areaflow
