#include "stripbie/effective.hpp"

#include "stripbie/conformal.hpp"
#include "stripbie/errors.hpp"
#include "stripbie/spectral.hpp"

#include <cmath>

namespace stripbie {

EffectiveResult lambda_y(const SolveResult& solution, const MappedBoundary& boundary) {
  const auto mu0 = boundary.slice(solution.mu, 0);
  const auto [t1, t2] = lambda_endpoints();
  EffectiveResult out;
  out.mu_t1 = spectral::interpolate(mu0, t1);
  out.mu_t2 = spectral::interpolate(mu0, t2);
  out.lambda_y = 1.0 + 0.5 * (out.mu_t2 - out.mu_t1);
  out.n_used = boundary.components() > 1 ? boundary.size(1) : boundary.size(0);
  out.h_spread = solution.max_h_spread();
  return out;
}

EffectiveResult lambda_y(const Solution& solution) {
  return lambda_y(solution.result, solution.boundary);
}

double cma_insulators(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw DomainError("concentration must lie in [0, 1)");
  return (1.0 - c) / (1.0 + c);
}

double cma_conductors(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw DomainError("concentration must lie in [0, 1)");
  return (1.0 + c) / (1.0 - c);
}

double cma_three_phase(double c1, double c2) {
  if (!(c1 >= 0.0 && c2 >= 0.0 && c1 + c2 < 1.0)) {
    throw DomainError("concentrations must be non-negative with c1 + c2 < 1");
  }
  const double d = c1 - c2;
  return (1.0 + d) / (1.0 - d);
}

}  // namespace stripbie
