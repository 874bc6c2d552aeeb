#include "stripbie/conformal.hpp"

#include "stripbie/errors.hpp"

#include <cmath>
#include <numbers>

namespace stripbie {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// tanh saturates to +-1 in double precision well before |Re w| = 30.
constexpr double kTanhClamp = 30.0;

void require_not_branch_point(cplx zeta) {
  if (zeta == cplx(1.0, 0.0) || zeta == cplx(-1.0, 0.0)) {
    throw SingularityError("strip map is singular at zeta = +-1");
  }
}

}  // namespace

cplx strip_to_disk(cplx z) {
  if (!(z.imag() >= 0.0 && z.imag() <= 1.0)) {
    throw DomainError("strip_to_disk: Im z must lie in [0, 1]");
  }
  const cplx w = kPi * z / 2.0 - kI * (kPi / 4.0);
  if (w.real() > kTanhClamp) return 1.0;
  if (w.real() < -kTanhClamp) return -1.0;
  return std::tanh(w);
}

cplx strip_to_disk_derivative(cplx z) {
  const cplx zeta = strip_to_disk(z);
  return (kPi / 2.0) * (1.0 - zeta * zeta);
}

cplx disk_to_strip(cplx zeta) {
  require_not_branch_point(zeta);
  if (std::abs(zeta) > 1.0 + 1e-14) throw DomainError("disk_to_strip: |zeta| > 1");
  return std::log((1.0 + zeta) / (1.0 - zeta)) / kPi + kI / 2.0;
}

cplx disk_to_strip_derivative(cplx zeta) {
  require_not_branch_point(zeta);
  return 2.0 / (kPi * (1.0 - zeta * zeta));
}

MapPoint map_point(cplx z) { return {z, strip_to_disk(z)}; }

std::pair<cplx, cplx> f0_and_derivative(cplx zeta) {
  require_not_branch_point(zeta);
  // (1 - zeta)/(1 + zeta) has positive real part in the open disk, so the
  // principal branch is continuous there with log 1 = 0.
  const cplx value = std::log((1.0 - zeta) / (1.0 + zeta)) / (kPi * kI) + 0.5;
  const cplx deriv = (kI / kPi) * (1.0 / (1.0 - zeta) + 1.0 / (1.0 + zeta));
  return {value, deriv};
}

cplx wall_pullback(double t) { return disk_to_strip(std::polar(1.0, t)); }

LambdaEndpoints lambda_endpoints() {
  return {2.0 * kPi - 2.0 * std::atan(std::exp(kPi)), 2.0 * kPi - 2.0 * std::atan(std::exp(-kPi))};
}

}  // namespace stripbie
