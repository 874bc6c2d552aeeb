#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stripbie {

struct GmresOptions {
  double tolerance = 1e-13;         // relative residual ||b - Ax|| / ||b||
  std::size_t max_iterations = 200;
};

struct GmresResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  std::vector<double> residuals;  // relative residual after each iteration
  bool converged = false;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

/// Unrestarted GMRES from a zero initial guess, modified Gram-Schmidt with
/// Givens rotations. Does not throw on non-convergence; check `converged`.
GmresResult gmres(const LinearOperator& apply, std::span<const double> rhs,
                  const GmresOptions& options = {});

}  // namespace stripbie
