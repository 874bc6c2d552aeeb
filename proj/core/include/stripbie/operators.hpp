#pragma once

#include "stripbie/boundary.hpp"
#include "stripbie/rhp.hpp"

#include <map>
#include <span>
#include <vector>

namespace stripbie {

/// Nystrom discretization of the generalized Neumann kernel operators
///
///   N mu(s) = int_J (1/pi) Im[ A(s)/A(t) eta'(t)/(eta(t) - eta(s)) ] mu(t) dt
///   M mu(s) = int_J (1/pi) Re[ A(s)/A(t) eta'(t)/(eta(t) - eta(s)) ] mu(t) dt
///
/// Both reduce to one dense Cauchy-type sum per target, evaluated matrix-free
/// in O(N^2). N is continuous and uses its diagonal limit. M carries a
/// -(1/2pi) cot((s-t)/2) singularity on each component; that part is applied
/// spectrally and the continuous remainder by the trapezoidal rule.
class KernelOperators {
 public:
  KernelOperators(const MappedBoundary& boundary, const RHPData& rhp);

  std::vector<double> apply_N(std::span<const double> density) const;
  std::vector<double> apply_M(std::span<const double> density) const;

  struct Both {
    std::vector<double> N;
    std::vector<double> M;
  };
  Both apply_both(std::span<const double> density) const;

  /// Writes N * density into out without allocating the M part.
  void apply_N(std::span<const double> density, std::span<double> out) const;

  std::size_t size() const { return ex_.size(); }

 private:
  // sum_{j != i} q_j / (eta_j - eta_i) for every target i.
  void cauchy_sums(std::span<const double> density, std::vector<double>& re,
                   std::vector<double>& im) const;
  void add_cotangent_correction(std::span<const double> density, std::span<double> out) const;

  const MappedBoundary* boundary_;
  const RHPData* rhp_;
  std::vector<double> ex_, ey_;        // eta
  std::vector<double> wx_, wy_;        // w eta' / A
  std::vector<double> n_diag_, m_diag_;
  std::map<std::size_t, std::vector<cplx>> correction_symbol_;  // keyed by node count
};

/// Single kernel entry of N at nodes (i, j), diagonal limit when i == j.
double neumann_kernel(const MappedBoundary& boundary, const RHPData& rhp, std::size_t i,
                      std::size_t j);

/// Continuous part of the M kernel: the full kernel minus -(1/2pi) cot((s-t)/2)
/// on the same component, diagonal limit when i == j.
double m_kernel_remainder(const MappedBoundary& boundary, const RHPData& rhp, std::size_t i,
                          std::size_t j);

std::vector<double> apply_N(const RHPData& rhp, const MappedBoundary& boundary,
                            std::span<const double> density);
std::vector<double> apply_M(const RHPData& rhp, const MappedBoundary& boundary,
                            std::span<const double> density);

}  // namespace stripbie
