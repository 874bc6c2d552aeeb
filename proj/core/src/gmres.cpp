#include "stripbie/gmres.hpp"

#include <cmath>
#include <numeric>

namespace stripbie {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresResult gmres(const LinearOperator& apply, std::span<const double> rhs,
                  const GmresOptions& options) {
  const std::size_t n = rhs.size();
  GmresResult result;
  result.x.assign(n, 0.0);
  const double beta = norm(rhs);
  if (beta == 0.0) {
    result.converged = true;
    return result;
  }

  const std::size_t max_it = std::min(options.max_iterations, n);
  std::vector<std::vector<double>> basis;
  basis.reserve(max_it + 1);
  basis.emplace_back(rhs.begin(), rhs.end());
  for (double& v : basis[0]) v /= beta;

  // Column-major upper Hessenberg, rotated in place into R.
  std::vector<std::vector<double>> hess;
  std::vector<double> cs, sn;
  std::vector<double> g{beta};

  std::size_t k = 0;
  for (; k < max_it; ++k) {
    std::vector<double> w(n);
    apply(basis[k], w);
    std::vector<double> h(k + 2, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      h[j] = dot(w, basis[j]);
      for (std::size_t i = 0; i < n; ++i) w[i] -= h[j] * basis[j][i];
    }
    h[k + 1] = norm(w);

    for (std::size_t j = 0; j < k; ++j) {
      const double tmp = cs[j] * h[j] + sn[j] * h[j + 1];
      h[j + 1] = -sn[j] * h[j] + cs[j] * h[j + 1];
      h[j] = tmp;
    }
    const double denom = std::hypot(h[k], h[k + 1]);
    cs.push_back(h[k] / denom);
    sn.push_back(h[k + 1] / denom);
    const double hk1 = h[k + 1];
    h[k] = cs[k] * h[k] + sn[k] * hk1;
    h[k + 1] = 0.0;
    g.push_back(-sn[k] * g[k]);
    g[k] = cs[k] * g[k];
    hess.push_back(std::move(h));

    const double rel = std::abs(g[k + 1]) / beta;
    result.residuals.push_back(rel);
    if (rel <= options.tolerance || hk1 == 0.0) {
      result.converged = true;
      ++k;
      break;
    }
    for (double& v : w) v /= hk1;
    basis.push_back(std::move(w));
  }
  result.iterations = k;

  // Back substitution R y = g.
  std::vector<double> y(k, 0.0);
  for (std::size_t ii = k; ii-- > 0;) {
    double s = g[ii];
    for (std::size_t j = ii + 1; j < k; ++j) s -= hess[j][ii] * y[j];
    y[ii] = s / hess[ii][ii];
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) result.x[i] += y[j] * basis[j][i];
  }
  return result;
}

}  // namespace stripbie
