#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stripbie {

/// Argument outside the domain of a closed-form map or formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a branch point of the strip map (zeta = +-1).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Scene violates one of the StripScene invariants.
class SceneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Example parameters outside the range the example is defined for.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Random placement gave up on an inclusion.
class PackingError : public std::runtime_error {
 public:
  PackingError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  std::size_t inclusion_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Boundary discretization is too coarse for the geometry.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Krylov iteration stopped before reaching the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residual_history() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Field requested at a point covered by an inclusion.
class MaskedPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace stripbie
