#include "doctest.h"

#include <stripbie/conformal.hpp>
#include <stripbie/errors.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace stripbie;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double u0(cplx zeta) { return f0_and_derivative(zeta).first.real(); }

}  // namespace

TEST_CASE("strip to disk special values") {
  CHECK(std::abs(strip_to_disk(0.5 * I)) < 1e-16);
  CHECK(std::abs(strip_to_disk(0.0) - (-I)) < 1e-15);
  CHECK(std::abs(strip_to_disk(I) - I) < 1e-15);
  for (double y : {0.01, 0.5, 0.99}) {
    CHECK(std::abs(strip_to_disk({50.0, y}) - 1.0) < 1e-15);
    CHECK(std::abs(strip_to_disk({-50.0, y}) + 1.0) < 1e-15);
    CHECK(std::abs(strip_to_disk({1e300, y}) - 1.0) < 1e-15);
  }
  CHECK_THROWS_AS(strip_to_disk({0.0, 1.5}), DomainError);
  CHECK_THROWS_AS(strip_to_disk({0.0, -0.1}), DomainError);
}

TEST_CASE("disk to strip special values") {
  CHECK(std::abs(disk_to_strip(0.0) - 0.5 * I) < 1e-16);
  CHECK(std::abs(disk_to_strip_derivative(0.0) - 2.0 / kPi) < 1e-16);
  CHECK_THROWS_AS(disk_to_strip(1.0), SingularityError);
  CHECK_THROWS_AS(disk_to_strip(-1.0), SingularityError);
  CHECK_THROWS_AS(disk_to_strip(1.1 * I), DomainError);
  const cplx zeta(0.3, -0.4);
  CHECK(std::abs(disk_to_strip_derivative(zeta) - 2.0 / (kPi * (1.0 - zeta * zeta))) < 1e-15);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    const cplx z(ux(rng), uy(rng));
    const cplx zeta = strip_to_disk(z);
    const cplx back = disk_to_strip(zeta);
    // storing zeta near +-1 already costs eps |dz/dzeta| in z
    const double conditioning = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(disk_to_strip_derivative(zeta));
    CHECK(std::abs(back - z) < std::max(1e-13, conditioning));
    if (std::abs(z.real()) <= 2.0) CHECK(std::abs(back - z) < 1e-13);
    const auto p = map_point(z);
    CHECK(p.z == z);
    CHECK(p.zeta == strip_to_disk(z));
  }
  std::uniform_real_distribution<double> ur(0.0, 0.95), ut(0.0, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    const cplx zeta = std::polar(ur(rng), ut(rng));
    CHECK(std::abs(strip_to_disk(disk_to_strip(zeta)) - zeta) < 1e-13);
  }
}

TEST_CASE("chain rule") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    const cplx z(ux(rng), uy(rng));
    const cplx zeta = strip_to_disk(z);
    const cplx forward = 0.5 * kPi * (1.0 - zeta * zeta);
    CHECK(std::abs(strip_to_disk_derivative(z) - forward) < 1e-15);
    CHECK(std::abs(disk_to_strip_derivative(zeta) * forward - 1.0) < 1e-12);
    const double h = 1e-6;
    const cplx fd = (strip_to_disk(z + h) - strip_to_disk(z - h)) / (2.0 * h);
    CHECK(std::abs(fd - forward) < 1e-8);
  }
}

TEST_CASE("walls map to the unit circle") {
  for (int i = 0; i < 64; ++i) {
    const double x = -4.0 + 8.0 * i / 63.0;
    const cplx lower = strip_to_disk(x);
    CHECK(std::abs(std::abs(lower) - 1.0) < 1e-12);
    CHECK(lower.imag() < 0.0);
    const cplx upper = strip_to_disk({x, 1.0});
    CHECK(std::abs(std::abs(upper) - 1.0) < 1e-12);
    CHECK(upper.imag() > 0.0);
  }
}

TEST_CASE("f0 values") {
  const auto [f, fp] = f0_and_derivative(0.0);
  CHECK(std::abs(f - 0.5) < 1e-16);
  CHECK(std::abs(fp - 2.0 * I / kPi) < 1e-16);
  CHECK(u0(-I) == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(u0(I)) < 1e-15);
  for (int i = 1; i < 32; ++i) {
    const double t = kPi * i / 32.0;
    CHECK(std::abs(u0(std::polar(1.0, t))) < 1e-13);
    CHECK(u0(std::polar(1.0, -t)) == Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(f0_and_derivative(1.0), SingularityError);
  const cplx zeta(0.2, -0.3);
  const double h = 1e-6;
  const cplx fd = (f0_and_derivative(zeta + h).first - f0_and_derivative(zeta - h).first) / (2.0 * h);
  CHECK(std::abs(fd - f0_and_derivative(zeta).second) < 1e-8);
}

TEST_CASE("u0 is harmonic") {
  const cplx points[] = {{0.1, 0.2}, {-0.4, 0.3}, {0.5, -0.5}, {0.0, 0.0}};
  for (cplx p : points) {
    double previous = 0.0;
    for (double h : {1e-2, 5e-3}) {
      const double lap = (u0(p + h) + u0(p - h) + u0(p + I * h) + u0(p - I * h) - 4.0 * u0(p)) / (h * h);
      if (previous != 0.0 && std::abs(previous) > 1e-9) {
        CHECK(std::abs(lap) < 0.3 * std::abs(previous));
      }
      CHECK(std::abs(lap) < 1e-2);
      previous = lap;
    }
  }
}

TEST_CASE("lambda endpoints") {
  const auto [t1, t2] = lambda_endpoints();
  CHECK(t1 == Approx(3.22796675063936).epsilon(1e-14));
  CHECK(t2 == Approx(6.19681121013002).epsilon(1e-14));
  CHECK(kPi < t1);
  CHECK(t1 < t2);
  CHECK(t2 < 2.0 * kPi);
  CHECK(std::abs(wall_pullback(t1) - cplx(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(wall_pullback(t2) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(wall_pullback(1.5 * kPi)) < 1e-15);
  // xi0(t) = (1/pi) log|cot(t/2)| on the lower half of the circle
  for (double t : {3.5, 4.0, 5.0, 6.0}) {
    CHECK(wall_pullback(t).real() == Approx(std::log(std::abs(1.0 / std::tan(0.5 * t))) / kPi));
    CHECK(std::abs(wall_pullback(t).imag()) < 1e-15);
  }
}
