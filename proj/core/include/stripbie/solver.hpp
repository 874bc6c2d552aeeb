#pragma once

#include "stripbie/boundary.hpp"
#include "stripbie/geometry.hpp"
#include "stripbie/gmres.hpp"
#include "stripbie/rhp.hpp"

#include <vector>

namespace stripbie {

struct SolverOptions {
  double tolerance = 1e-13;
  std::size_t max_iterations = 200;
};

/// Solution of (I - N) mu = -M gamma together with everything derived from it.
struct SolveResult {
  std::vector<double> mu;        // per node
  std::vector<double> h;         // one constant per component
  std::vector<double> h_spread;  // standard deviation of the node-wise h before averaging
  double c = 0.0;                // f(alpha)
  std::vector<double> delta;     // delta_1..delta_m
  std::vector<cplx> g_boundary;  // g(eta(t)) per node
  std::vector<cplx> f_boundary;  // f(eta(t)) per node
  std::size_t iterations = 0;
  double residual = 0.0;         // true relative residual of the final iterate
  std::vector<double> residual_history;

  /// Largest h_spread; a solution-quality indicator.
  double max_h_spread() const;
};

/// Throws ConvergenceError when GMRES stops short of the tolerance.
SolveResult solve_ie(const RHPData& rhp, const MappedBoundary& boundary,
                     const SolverOptions& options = {});

/// A solved scene: everything needed to evaluate fields afterwards.
struct Solution {
  StripScene scene;
  MappedBoundary boundary;
  RHPData rhp;
  SolveResult result;

  std::size_t n() const { return boundary.components() > 1 ? boundary.size(1) : boundary.size(0); }
};

Solution solve(const StripScene& scene, const DiscretizeOptions& discretization,
               const SolverOptions& options = {});

}  // namespace stripbie
