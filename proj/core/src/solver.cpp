#include "stripbie/solver.hpp"

#include "stripbie/errors.hpp"
#include "stripbie/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stripbie {

double SolveResult::max_h_spread() const {
  return h_spread.empty() ? 0.0 : *std::max_element(h_spread.begin(), h_spread.end());
}

SolveResult solve_ie(const RHPData& rhp, const MappedBoundary& boundary,
                     const SolverOptions& options) {
  const KernelOperators ops(boundary, rhp);
  const std::size_t total = boundary.nodes();
  const auto& gamma = rhp.gamma;

  const auto on_gamma = ops.apply_both(gamma);
  std::vector<double> rhs(total);
  for (std::size_t i = 0; i < total; ++i) rhs[i] = -on_gamma.M[i];

  const LinearOperator i_minus_n = [&ops](std::span<const double> x, std::span<double> y) {
    ops.apply_N(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - y[i];
  };
  auto krylov = gmres(i_minus_n, rhs, {options.tolerance, options.max_iterations});
  if (!krylov.converged) {
    std::ostringstream os;
    os << "GMRES did not reach tolerance " << options.tolerance << " in " << krylov.iterations
       << " iterations (last relative residual "
       << (krylov.residuals.empty() ? 0.0 : krylov.residuals.back()) << ")";
    throw ConvergenceError(os.str(), std::move(krylov.residuals));
  }

  SolveResult out;
  out.mu = std::move(krylov.x);
  out.iterations = krylov.iterations;
  out.residual_history = std::move(krylov.residuals);

  const auto on_mu = ops.apply_both(out.mu);
  double rhs_norm = 0.0, res_norm = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const double r = rhs[i] - (out.mu[i] - on_mu.N[i]);
    res_norm += r * r;
    rhs_norm += rhs[i] * rhs[i];
  }
  out.residual = rhs_norm > 0.0 ? std::sqrt(res_norm / rhs_norm) : std::sqrt(res_norm);

  // h = [M mu - (I - N) gamma] / 2 is constant on each component in exact
  // arithmetic; average and keep the spread.
  const std::size_t comps = boundary.components();
  out.h.assign(comps, 0.0);
  out.h_spread.assign(comps, 0.0);
  for (std::size_t k = 0; k < comps; ++k) {
    const std::size_t lo = boundary.offsets[k], hi = boundary.offsets[k + 1];
    std::vector<double> node_h(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      node_h[i - lo] = 0.5 * (on_mu.M[i] - (gamma[i] - on_gamma.N[i]));
    }
    const double count = static_cast<double>(node_h.size());
    double mean = 0.0;
    for (double v : node_h) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : node_h) var += (v - mean) * (v - mean);
    out.h[k] = mean;
    out.h_spread[k] = std::sqrt(var / count);
  }

  out.c = -out.h[0];
  out.delta.resize(comps - 1);
  for (std::size_t k = 1; k < comps; ++k) {
    out.delta[k - 1] = k <= rhp.conductors ? out.h[k] + 0.5 + out.c : out.h[k];
  }

  out.g_boundary.resize(total);
  out.f_boundary.resize(total);
  for (std::size_t k = 0; k < comps; ++k) {
    for (std::size_t i = boundary.offsets[k]; i < boundary.offsets[k + 1]; ++i) {
      out.g_boundary[i] = cplx(gamma[i] + out.h[k], out.mu[i]) / rhp.A[i];
      out.f_boundary[i] = (boundary.eta[i] - boundary.alpha) * out.g_boundary[i] + out.c;
    }
  }
  return out;
}

Solution solve(const StripScene& scene, const DiscretizeOptions& discretization,
               const SolverOptions& options) {
  Solution s;
  s.scene = scene;
  s.boundary = discretize(scene, discretization);
  s.rhp = build_rhp(s.boundary, scene);
  s.result = solve_ie(s.rhp, s.boundary, options);
  return s;
}

}  // namespace stripbie
