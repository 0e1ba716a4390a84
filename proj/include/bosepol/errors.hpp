#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bosepol {

/// Bad run/solver configuration (wrong cutoffs, undersized quadrature, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guard against runaway memory or dimension was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested truncation admits no basis states at all.
class EmptySpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result did not stabilize under grid/basis refinement.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenfunction sign tracking across neighboring parameter values failed.
class ContinuityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver ran out of iterations; carries the best residuals.
class IterationError : public std::runtime_error {
 public:
  IterationError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace bosepol
