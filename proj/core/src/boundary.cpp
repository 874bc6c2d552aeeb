#include "stripbie/boundary.hpp"

#include "stripbie/conformal.hpp"
#include "stripbie/errors.hpp"
#include "stripbie/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace stripbie {

namespace {

constexpr double kPi = std::numbers::pi;

struct AlphaChoice {
  cplx strip;
  cplx disk;
  double score;  // distance to the nearest component in units of its node spacing
};

double spacing(const MappedBoundary& b, std::size_t k) {
  double peak = 0.0;
  for (const cplx& d : b.deta_of(k)) peak = std::max(peak, std::abs(d));
  return b.weight(k) * peak;
}

AlphaChoice score_candidate(const MappedBoundary& b, const std::vector<double>& spacings, cplx z) {
  const cplx zeta = strip_to_disk(z);
  double score = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < b.components(); ++k) {
    double dist = std::numeric_limits<double>::infinity();
    for (const cplx& e : b.eta_of(k)) dist = std::min(dist, std::abs(e - zeta));
    score = std::min(score, dist / spacings[k]);
  }
  return {z, zeta, score};
}

AlphaChoice choose_alpha(const MappedBoundary& b, const StripScene& scene) {
  std::vector<double> spacings(b.components());
  for (std::size_t k = 0; k < b.components(); ++k) spacings[k] = spacing(b, k);

  const double w = scene.band_halfwidth;
  std::vector<cplx> candidates = {{0.5 * w, 0.25}, {-0.5 * w, 0.25}, {0.5 * w, 0.75},
                                  {-0.5 * w, 0.75}, {0.0, 0.5},       {1.3, 0.5},
                                  {-1.3, 0.5}};
  AlphaChoice best{0.0, 0.0, 0.0};
  auto consider = [&](cplx z) {
    if (scene.covering(z)) return;
    const auto c = score_candidate(b, spacings, z);
    // near-ties keep the earlier candidate so the choice does not flip with n
    if (c.score > 1.01 * best.score) best = c;
  };
  for (cplx z : candidates) consider(z);
  if (best.score < 1.0) {
    // Dense scenes can cover every preferred point; fall back to a lattice.
    for (int i = 0; i <= 28; ++i) {
      for (int j = 1; j <= 19; ++j) consider({-1.4 + 0.1 * i, 0.05 * j});
    }
  }
  if (best.score < 1.0) {
    throw ResolutionError("no auxiliary point lies a node spacing away from the boundary; increase n");
  }
  return best;
}

void fill_component(MappedBoundary& b, std::size_t k, std::size_t n, const Inclusion* inc) {
  const std::size_t off = b.offsets[k];
  std::vector<cplx> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    b.t[off + j] = t;
    if (!inc) {
      b.eta[off + j] = std::polar(1.0, t);
      d[j] = cplx(0.0, 1.0) * b.eta[off + j];
    } else {
      const cplx zeta = strip_to_disk(inc->point(t));
      b.eta[off + j] = zeta;
      d[j] = (kPi / 2.0) * (1.0 - zeta * zeta) * inc->tangent(t);
    }
    b.deta[off + j] = d[j];
  }
  const auto dd = spectral::derivative(std::span<const cplx>(d));
  std::copy(dd.begin(), dd.end(), b.d2eta.begin() + static_cast<long>(off));
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

double MappedBoundary::weight(std::size_t k) const {
  return 2.0 * kPi / static_cast<double>(size(k));
}

std::size_t MappedBoundary::component_of(std::size_t node) const {
  const auto it = std::upper_bound(offsets.begin(), offsets.end(), node);
  return static_cast<std::size_t>(it - offsets.begin()) - 1;
}

double winding_number(const MappedBoundary& b, std::size_t k, cplx p) {
  cplx sum = 0.0;
  const auto eta = b.eta_of(k);
  const auto deta = b.deta_of(k);
  for (std::size_t j = 0; j < eta.size(); ++j) sum += deta[j] / (eta[j] - p);
  return (sum * b.weight(k) / cplx(0.0, 2.0 * kPi)).real();
}

MappedBoundary discretize(const StripScene& scene, std::size_t n) {
  return discretize(scene, DiscretizeOptions{n, 0});
}

MappedBoundary discretize(const StripScene& scene, const DiscretizeOptions& options) {
  const std::size_t n = options.n;
  const std::size_t n0 = options.outer_n == 0 ? n : options.outer_n;
  if (n < 16 || !is_power_of_two(n) || n0 < 16 || !is_power_of_two(n0)) {
    throw std::invalid_argument("nodes per component must be a power of two >= 16");
  }
  scene.validate();

  MappedBoundary b;
  const std::size_t m = scene.size();
  b.offsets.resize(m + 2);
  b.offsets[0] = 0;
  b.offsets[1] = n0;
  for (std::size_t k = 1; k <= m; ++k) b.offsets[k + 1] = b.offsets[k] + n;
  const std::size_t total = b.offsets.back();
  b.t.resize(total);
  b.eta.resize(total);
  b.deta.resize(total);
  b.d2eta.resize(total);

  fill_component(b, 0, n0, nullptr);
  for (std::size_t k = 1; k <= m; ++k) {
    const Inclusion& inc = scene.inclusions[k - 1];
    fill_component(b, k, n, &inc);

    const auto eta = b.eta_of(k);
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (!(std::abs(eta[j]) < 1.0)) {
        throw ResolutionError("image of inclusion " + std::to_string(k - 1) + " reaches the unit circle");
      }
      min_step = std::min(min_step, std::abs(eta[(j + 1) % n] - eta[j]));
    }
    if (min_step < 1e-12) {
      throw ResolutionError("image of inclusion " + std::to_string(k - 1) +
                            " collapses below the resolvable node spacing");
    }
    const double wind = winding_number(b, k, strip_to_disk(inc.center()));
    if (std::abs(wind + 1.0) > 0.5) {
      std::ostringstream os;
      os << "image of inclusion " << k - 1 << " is not clockwise (winding " << wind << ")";
      throw ResolutionError(os.str());
    }
  }

  const auto alpha = choose_alpha(b, scene);
  b.alpha = alpha.disk;
  b.alpha_strip = alpha.strip;
  return b;
}

}  // namespace stripbie
