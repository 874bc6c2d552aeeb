#include "stripbie/potential.hpp"

#include "stripbie/conformal.hpp"
#include "stripbie/errors.hpp"
#include "stripbie/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace stripbie {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI(0.0, 2.0 * kPi);

bool winding_ok(cplx denominator) { return std::abs(denominator / kTwoPiI - 1.0) < 0.5; }

}  // namespace

CauchyValue cauchy_eval(const MappedBoundary& b, std::span<const cplx> values, cplx zeta) {
  if (!(std::abs(zeta) < 1.0)) throw DomainError("cauchy_eval: point outside the unit disk");
  cplx num = 0.0, den = 0.0;
  bool near = false;
  for (std::size_t k = 0; k < b.components(); ++k) {
    const double w = b.weight(k);
    for (std::size_t i = b.offsets[k]; i < b.offsets[k + 1]; ++i) {
      const cplx d = b.eta[i] - zeta;
      if (std::abs(d) < w * std::abs(b.deta[i])) near = true;
      const cplx kern = w * b.deta[i] / d;
      num += values[i] * kern;
      den += kern;
    }
  }
  // The discrete winding number is unreliable within a node spacing of the
  // boundary; such points are only flagged.
  if (!near && !winding_ok(den)) throw DomainError("cauchy_eval: point lies inside an inclusion image");
  return {num / den, near};
}

FieldEvaluator::FieldEvaluator(const Solution& solution) : solution_(&solution) {
  const auto& b = solution.boundary;
  const auto& f = solution.result.f_boundary;
  const std::size_t total = b.nodes();
  ex_.resize(total);
  ey_.resize(total);
  weight_.resize(total);
  f_weighted_.resize(total);
  fp_weighted_.resize(total);
  spacing_.resize(total);
  fprime_.resize(total);
  for (std::size_t k = 0; k < b.components(); ++k) {
    const auto dfdt = spectral::derivative(b.slice(f, k));
    const double w = b.weight(k);
    for (std::size_t j = 0; j < dfdt.size(); ++j) {
      const std::size_t i = b.offsets[k] + j;
      fprime_[i] = dfdt[j] / b.deta[i];
      ex_[i] = b.eta[i].real();
      ey_[i] = b.eta[i].imag();
      weight_[i] = w * b.deta[i];
      f_weighted_[i] = weight_[i] * f[i];
      fp_weighted_[i] = weight_[i] * fprime_[i];
      spacing_[i] = std::abs(weight_[i]);
    }
  }
}

FieldEvaluator::Sample FieldEvaluator::analytic(cplx zeta) const {
  if (!(std::abs(zeta) < 1.0)) throw DomainError("point outside the unit disk");
  const std::size_t total = ex_.size();
  double den_r = 0, den_i = 0, f_r = 0, f_i = 0, p_r = 0, p_i = 0;
  double closest = std::numeric_limits<double>::infinity();
  const double zx = zeta.real(), zy = zeta.imag();
  const auto* w = reinterpret_cast<const double*>(weight_.data());
  const auto* fw = reinterpret_cast<const double*>(f_weighted_.data());
  const auto* pw = reinterpret_cast<const double*>(fp_weighted_.data());
#pragma omp simd reduction(+ : den_r, den_i, f_r, f_i, p_r, p_i) reduction(min : closest)
  for (std::size_t i = 0; i < total; ++i) {
    const double dx = ex_[i] - zx;
    const double dy = ey_[i] - zy;
    const double d2 = dx * dx + dy * dy;
    const double inv = 1.0 / d2;
    // c / d = c conj(d) / |d|^2
    den_r += (w[2 * i] * dx + w[2 * i + 1] * dy) * inv;
    den_i += (w[2 * i + 1] * dx - w[2 * i] * dy) * inv;
    f_r += (fw[2 * i] * dx + fw[2 * i + 1] * dy) * inv;
    f_i += (fw[2 * i + 1] * dx - fw[2 * i] * dy) * inv;
    p_r += (pw[2 * i] * dx + pw[2 * i + 1] * dy) * inv;
    p_i += (pw[2 * i + 1] * dx - pw[2 * i] * dy) * inv;
    closest = std::min(closest, d2 / (spacing_[i] * spacing_[i]));
  }
  const cplx den(den_r, den_i);
  const bool near = closest < 1.0;
  if (!near && !winding_ok(den)) throw DomainError("point lies inside an inclusion image");
  return {cplx(f_r, f_i) / den, cplx(p_r, p_i) / den, near};
}

void FieldEvaluator::check_point(cplx z) const {
  if (!(z.imag() >= 0.0 && z.imag() <= 1.0)) throw DomainError("point outside the strip");
  if (const auto k = solution_->scene.covering(z)) {
    throw MaskedPointError("point lies inside inclusion " + std::to_string(*k));
  }
}

double FieldEvaluator::temperature(cplx z) const {
  check_point(z);
  if (z.imag() == 0.0) return 1.0;
  if (z.imag() == 1.0) return 0.0;
  const cplx zeta = strip_to_disk(z);
  if (std::abs(zeta) >= 1.0) return 1.0 - z.imag();  // beyond the tanh clamp
  const auto s = analytic(zeta);
  return (s.f + f0_and_derivative(zeta).first).real();
}

cplx FieldEvaluator::complex_derivative(cplx z) const {
  check_point(z);
  const cplx zeta = strip_to_disk(z);
  if (std::abs(zeta) >= 1.0) return cplx(0.0, 1.0);
  cplx fp = 0.0;
  if (z.imag() > 0.0 && z.imag() < 1.0) fp = analytic(zeta).fprime;
  const cplx f0p = f0_and_derivative(zeta).second;
  // 1 / Phi'(zeta) = (pi/2)(1 - zeta^2)
  return (fp + f0p) * (kPi / 2.0) * (1.0 - zeta * zeta);
}

std::vector<double> normal_flux_density(const FieldEvaluator& evaluator) {
  const auto& b = evaluator.solution().boundary;
  const auto& fp = evaluator.fprime_boundary();
  std::vector<double> out(b.nodes(), 0.0);
  // Component 0 contains the branch points of f0; only inclusion images are filled.
  for (std::size_t i = b.offsets[1]; i < b.nodes(); ++i) {
    const cplx f0p = f0_and_derivative(b.eta[i]).second;
    out[i] = (cplx(0.0, -1.0) * b.deta[i] * (fp[i] + f0p)).real();
  }
  return out;
}

std::size_t FieldGrid::masked() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), PointMask::InsideInclusion));
}

FieldGrid evaluate_grid(const Solution& solution, const GridSpec& spec) {
  const FieldEvaluator eval(solution);
  FieldGrid grid;
  grid.spec = spec;
  const std::size_t total = spec.nx * spec.ny;
  grid.x.resize(total);
  grid.y.resize(total);
  grid.mask.resize(total);
  grid.T.assign(total, std::numeric_limits<double>::quiet_NaN());
  grid.q.assign(total, cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()));
  auto coord = [](double lo, double hi, std::size_t count, std::size_t i) {
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  };
  std::size_t near = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : near)
  for (std::size_t p = 0; p < total; ++p) {
    const std::size_t i = p % spec.nx;
    const std::size_t j = p / spec.nx;
    const cplx z(coord(spec.x_min, spec.x_max, spec.nx, i), coord(spec.y_min, spec.y_max, spec.ny, j));
    grid.x[p] = z.real();
    grid.y[p] = z.imag();
    if (solution.scene.covering(z)) {
      grid.mask[p] = PointMask::InsideInclusion;
      continue;
    }
    grid.mask[p] = PointMask::Interior;
    const cplx zeta = strip_to_disk(z);
    if (z.imag() <= 0.0 || z.imag() >= 1.0 || std::abs(zeta) >= 1.0) {
      grid.T[p] = eval.temperature(z);
      grid.q[p] = eval.complex_flux(z);
      continue;
    }
    const auto s = eval.analytic(zeta);
    const auto [f0, f0p] = f0_and_derivative(zeta);
    grid.T[p] = (s.f + f0).real();
    grid.q[p] = -std::conj((s.fprime + f0p) * (kPi / 2.0) * (1.0 - zeta * zeta));
    if (s.near_boundary) ++near;
  }
  grid.near_boundary = near;
  return grid;
}

void write_grid(std::ostream& out, const FieldGrid& grid, const std::string& scene_name,
                std::size_t n) {
  out << "# scene=" << scene_name << " n=" << n << "\n";
  out << "x,y,mask,T,qx,qy\n";
  for (std::size_t p = 0; p < grid.size(); ++p) {
    char line[160];
    if (grid.mask[p] == PointMask::InsideInclusion) {
      std::snprintf(line, sizeof line, "%.10g,%.10g,1,nan,nan,nan\n", grid.x[p], grid.y[p]);
    } else {
      std::snprintf(line, sizeof line, "%.10g,%.10g,0,%.15g,%.15g,%.15g\n", grid.x[p], grid.y[p],
                    grid.T[p], grid.q[p].real(), grid.q[p].imag());
    }
    out << line;
  }
}

}  // namespace stripbie
