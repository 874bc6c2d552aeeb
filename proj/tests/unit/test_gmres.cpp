#include "doctest.h"

#include <stripbie/gmres.hpp>

#include <cmath>
#include <random>

using namespace stripbie;

namespace {

struct Dense {
  std::size_t n;
  std::vector<double> a;
  void operator()(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
      y[i] = s;
    }
  }
};

Dense perturbed_identity(std::size_t n, double eps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Dense d{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d.a[i * n + j] = (i == j ? 1.0 : 0.0) + eps * g(rng) / std::sqrt(n);
  }
  return d;
}

}  // namespace

TEST_CASE("gmres solves a nonsymmetric system") {
  const auto A = perturbed_identity(60, 0.5, 1);
  std::vector<double> x_true(60), b(60);
  for (std::size_t i = 0; i < 60; ++i) x_true[i] = std::sin(0.3 * i);
  A(x_true, b);
  const auto r = gmres(A, b);
  CHECK(r.converged);
  CHECK(r.iterations == r.residuals.size());
  CHECK(r.residuals.back() < 1e-13);
  for (std::size_t i = 0; i < 60; ++i) CHECK(std::abs(r.x[i] - x_true[i]) < 1e-11);
  for (std::size_t i = 1; i < r.residuals.size(); ++i) CHECK(r.residuals[i] <= r.residuals[i - 1] * (1 + 1e-12));
}

TEST_CASE("gmres zero right-hand side") {
  const auto A = perturbed_identity(10, 0.5, 2);
  const std::vector<double> b(10, 0.0);
  const auto r = gmres(A, b);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  for (double v : r.x) CHECK(v == 0.0);
}

TEST_CASE("gmres reports non-convergence") {
  const auto A = perturbed_identity(40, 3.0, 3);
  std::vector<double> b(40, 1.0);
  const auto r = gmres(A, b, {.tolerance = 1e-13, .max_iterations = 3});
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.residuals.size() == 3);
}
