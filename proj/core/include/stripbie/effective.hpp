#pragma once

#include "stripbie/boundary.hpp"
#include "stripbie/solver.hpp"

namespace stripbie {

/// Vertical effective conductivity of the band |x| <= 1,
/// lambda_y = 1 + (mu(t2) - mu(t1)) / 2.
struct EffectiveResult {
  double lambda_y = 1.0;
  double mu_t1 = 0.0;
  double mu_t2 = 0.0;
  std::size_t n_used = 0;
  double h_spread = 0.0;
};

/// mu(t1), mu(t2) come from the trigonometric interpolant of mu on the unit circle.
EffectiveResult lambda_y(const SolveResult& solution, const MappedBoundary& boundary);
EffectiveResult lambda_y(const Solution& solution);

/// Clausius-Mossotti estimates. Throw DomainError outside their range.
double cma_insulators(double c);
double cma_conductors(double c);
double cma_three_phase(double c_conductors, double c_insulators);

}  // namespace stripbie
