#pragma once

#include "stripbie/boundary.hpp"
#include "stripbie/solver.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stripbie {

struct CauchyValue {
  cplx value;
  bool near_boundary = false;  // closer than one node spacing to some component
};

/// Interior value of the analytic function with boundary samples `values`:
/// the trapezoidal Cauchy sum divided by the same sum applied to 1.
/// Throws DomainError when zeta is not in G.
CauchyValue cauchy_eval(const MappedBoundary& boundary, std::span<const cplx> values, cplx zeta);

/// Temperature and flux anywhere in the strip for a solved scene. Holds a
/// reference to the solution, which must outlive it.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const Solution& solution);

  struct Sample {
    cplx f;        // f(zeta)
    cplx fprime;   // f'(zeta)
    bool near_boundary = false;
  };

  /// f and f' at a point of G.
  Sample analytic(cplx zeta) const;

  /// T(z) = Re[f + f0](Phi^{-1}(z)). Exact wall values on Im z = 0 and 1.
  /// Throws MaskedPointError inside an inclusion, DomainError off the strip.
  double temperature(cplx z) const;

  /// F'(z) = dT/dx - i dT/dy.
  cplx complex_derivative(cplx z) const;

  /// Heat flux q = -conj(F'(z)) = qx + i qy.
  cplx complex_flux(cplx z) const { return -std::conj(complex_derivative(z)); }

  /// f'(eta(t)) per node, from spectral differentiation of f(eta(t)).
  const std::vector<cplx>& fprime_boundary() const { return fprime_; }

  const Solution& solution() const { return *solution_; }

 private:
  void check_point(cplx z) const;

  const Solution* solution_;
  std::vector<double> ex_, ey_;
  std::vector<cplx> weight_;  // w eta'
  std::vector<cplx> f_weighted_, fp_weighted_;
  std::vector<double> spacing_;
  std::vector<cplx> fprime_;
};

/// |eta'(t)| dU/dn at every boundary node, n the outward normal of G, computed
/// as Re[-i eta'(t) (f' + f0')(eta(t))]. Zero on insulator images; integrates
/// to zero over each conductor image.
std::vector<double> normal_flux_density(const FieldEvaluator& evaluator);

struct GridSpec {
  double x_min = -1.5;
  double x_max = 1.5;
  double y_min = 0.0001;
  double y_max = 0.9999;
  std::size_t nx = 601;
  std::size_t ny = 334;
};

enum class PointMask { Interior, InsideInclusion };

/// Row-major grid (x varies fastest).
struct FieldGrid {
  GridSpec spec;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<PointMask> mask;
  std::vector<double> T;   // NaN where masked
  std::vector<cplx> q;     // NaN where masked
  std::size_t near_boundary = 0;

  std::size_t size() const { return x.size(); }
  std::size_t masked() const;
};

FieldGrid evaluate_grid(const Solution& solution, const GridSpec& spec);

/// Comma-separated table: a "# scene=<name> n=<n>" line, the header
/// x,y,mask,T,qx,qy, then one row per grid point.
void write_grid(std::ostream& out, const FieldGrid& grid, const std::string& scene_name,
                std::size_t n);

}  // namespace stripbie
