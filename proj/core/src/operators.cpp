#include "stripbie/operators.hpp"

#include "stripbie/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stripbie {

namespace {

constexpr double kPi = std::numbers::pi;

// Diagonal limit of (A(s)/A(t)) eta'(t)/(eta(t)-eta(s)) minus 1/(t-s).
cplx diagonal_limit(const MappedBoundary& b, std::size_t i) {
  return b.d2eta[i] / (2.0 * b.deta[i]) - b.deta[i] / (b.eta[i] - b.alpha);
}

cplx raw_kernel(const MappedBoundary& b, const RHPData& rhp, std::size_t i, std::size_t j) {
  return (rhp.A[i] / rhp.A[j]) * b.deta[j] / (b.eta[j] - b.eta[i]);
}

// Symbol of (exact singular operator) - (its trapezoidal sum without the
// diagonal) for the kernel -(1/2pi) cot((s-t)/2) on n equispaced nodes.
std::vector<cplx> cotangent_correction(std::size_t n) {
  const double h = 2.0 * kPi / static_cast<double>(n);
  std::vector<cplx> stencil(n, 0.0);
  for (std::size_t l = 1; l < n; ++l) {
    stencil[l] = -h / (2.0 * kPi) / std::tan(0.5 * h * static_cast<double>(l));
  }
  auto symbol = spectral::forward(stencil);
  for (std::size_t k = 0; k < n; ++k) {
    const long w = spectral::wavenumber(k, n);
    cplx exact = 0.0;
    if (w != 0 && k != n / 2) exact = cplx(0.0, w > 0 ? 1.0 : -1.0);
    symbol[k] = exact - symbol[k];
  }
  return symbol;
}

// sum_j (px_j + i py_j) / ((ex_j - xi) + i (ey_j - yi)) over [lo, hi).
cplx source_sum(const double* __restrict ex, const double* __restrict ey,
                const double* __restrict px, const double* __restrict py, std::size_t lo,
                std::size_t hi, double xi, double yi) {
  double sr = 0.0;
  double si = 0.0;
#pragma omp simd reduction(+ : sr, si)
  for (std::size_t j = lo; j < hi; ++j) {
    const double dx = ex[j] - xi;
    const double dy = ey[j] - yi;
    const double inv = 1.0 / (dx * dx + dy * dy);
    sr += (px[j] * dx + py[j] * dy) * inv;
    si += (py[j] * dx - px[j] * dy) * inv;
  }
  return {sr, si};
}

}  // namespace

KernelOperators::KernelOperators(const MappedBoundary& boundary, const RHPData& rhp)
    : boundary_(&boundary), rhp_(&rhp) {
  const std::size_t total = boundary.nodes();
  if (rhp.A.size() != total || rhp.gamma.size() != total) {
    throw std::invalid_argument("RHP data does not match the boundary");
  }
  ex_.resize(total);
  ey_.resize(total);
  wx_.resize(total);
  wy_.resize(total);
  n_diag_.resize(total);
  m_diag_.resize(total);
  for (std::size_t k = 0; k < boundary.components(); ++k) {
    const double w = boundary.weight(k);
    for (std::size_t i = boundary.offsets[k]; i < boundary.offsets[k + 1]; ++i) {
      ex_[i] = boundary.eta[i].real();
      ey_[i] = boundary.eta[i].imag();
      const cplx q = w * boundary.deta[i] / rhp.A[i];
      wx_[i] = q.real();
      wy_[i] = q.imag();
      const cplx d = diagonal_limit(boundary, i);
      n_diag_[i] = w * d.imag() / kPi;
      m_diag_[i] = w * d.real() / kPi;
    }
    const std::size_t n = boundary.size(k);
    if (!correction_symbol_.contains(n)) correction_symbol_[n] = cotangent_correction(n);
  }
}

void KernelOperators::cauchy_sums(std::span<const double> density, std::vector<double>& re,
                                  std::vector<double>& im) const {
  const std::size_t total = size();
  if (density.size() != total) throw std::invalid_argument("density has the wrong length");
  std::vector<double> qx(total), qy(total);
  for (std::size_t j = 0; j < total; ++j) {
    qx[j] = wx_[j] * density[j];
    qy[j] = wy_[j] * density[j];
  }
  re.assign(total, 0.0);
  im.assign(total, 0.0);
  const double* ex = ex_.data();
  const double* ey = ey_.data();
  const double* px = qx.data();
  const double* py = qy.data();

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < total; ++i) {
    const double xi = ex[i];
    const double yi = ey[i];
    const cplx below = source_sum(ex, ey, px, py, 0, i, xi, yi);
    const cplx above = source_sum(ex, ey, px, py, i + 1, total, xi, yi);
    re[i] = below.real() + above.real();
    im[i] = below.imag() + above.imag();
  }
}

void KernelOperators::add_cotangent_correction(std::span<const double> density,
                                               std::span<double> out) const {
  const auto& b = *boundary_;
  for (std::size_t k = 0; k < b.components(); ++k) {
    const auto& symbol = correction_symbol_.at(b.size(k));
    const auto corr = spectral::apply_symbol(density.subspan(b.offsets[k], b.size(k)), symbol);
    auto dst = out.subspan(b.offsets[k], b.size(k));
    for (std::size_t i = 0; i < corr.size(); ++i) dst[i] += corr[i];
  }
}

void KernelOperators::apply_N(std::span<const double> density, std::span<double> out) const {
  std::vector<double> re, im;
  cauchy_sums(density, re, im);
  const auto& A = rhp_->A;
  for (std::size_t i = 0; i < size(); ++i) {
    const cplx s = A[i] * cplx(re[i], im[i]);
    out[i] = s.imag() / kPi + n_diag_[i] * density[i];
  }
}

std::vector<double> KernelOperators::apply_N(std::span<const double> density) const {
  std::vector<double> out(size());
  apply_N(density, out);
  return out;
}

KernelOperators::Both KernelOperators::apply_both(std::span<const double> density) const {
  std::vector<double> re, im;
  cauchy_sums(density, re, im);
  const auto& A = rhp_->A;
  Both out{std::vector<double>(size()), std::vector<double>(size())};
  for (std::size_t i = 0; i < size(); ++i) {
    const cplx s = A[i] * cplx(re[i], im[i]);
    out.N[i] = s.imag() / kPi + n_diag_[i] * density[i];
    out.M[i] = s.real() / kPi + m_diag_[i] * density[i];
  }
  add_cotangent_correction(density, out.M);
  return out;
}

std::vector<double> KernelOperators::apply_M(std::span<const double> density) const {
  return apply_both(density).M;
}

double neumann_kernel(const MappedBoundary& b, const RHPData& rhp, std::size_t i, std::size_t j) {
  if (i == j) return diagonal_limit(b, i).imag() / kPi;
  return raw_kernel(b, rhp, i, j).imag() / kPi;
}

double m_kernel_remainder(const MappedBoundary& b, const RHPData& rhp, std::size_t i,
                          std::size_t j) {
  if (i == j) return diagonal_limit(b, i).real() / kPi;
  double value = raw_kernel(b, rhp, i, j).real() / kPi;
  if (b.component_of(i) == b.component_of(j)) {
    value += 1.0 / (2.0 * kPi) / std::tan(0.5 * (b.t[i] - b.t[j]));
  }
  return value;
}

std::vector<double> apply_N(const RHPData& rhp, const MappedBoundary& boundary,
                            std::span<const double> density) {
  return KernelOperators(boundary, rhp).apply_N(density);
}

std::vector<double> apply_M(const RHPData& rhp, const MappedBoundary& boundary,
                            std::span<const double> density) {
  return KernelOperators(boundary, rhp).apply_M(density);
}

}  // namespace stripbie
