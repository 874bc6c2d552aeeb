#include "doctest.h"

#include <stripbie/boundary.hpp>
#include <stripbie/geometry.hpp>
#include <stripbie/rhp.hpp>

#include <cmath>
#include <numbers>

using namespace stripbie;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

StripScene centred(InclusionKind kind, double r) {
  StripScene scene;
  scene.inclusions = {make_circle(kind, 0.5 * I, r)};
  return scene;
}

}  // namespace

TEST_CASE("rhp coefficients") {
  const auto scene = paper_example(ExampleId::Ex4, {.a = 0.1, .b = 0.05});
  const auto b = discretize(scene, 64);
  const auto rhp = build_rhp(b, scene);
  CHECK(rhp.conductors == 5);
  REQUIRE(rhp.theta.size() == 6);
  for (double th : rhp.theta) CHECK(th == 0.0);
  for (std::size_t i = 0; i < b.nodes(); ++i) {
    CHECK(std::abs(rhp.A[i]) > 0.0);
    CHECK(std::abs(rhp.A[i] - (b.eta[i] - b.alpha)) < 1e-15);
  }
  for (std::size_t i = 0; i < b.size(0); ++i) CHECK(rhp.gamma[i] == 0.0);

  const auto ins = paper_example(ExampleId::Ex1CaseI, {.r = 0.1});
  const auto bi = discretize(ins, 64);
  const auto ri = build_rhp(bi, ins);
  CHECK(ri.conductors == 0);
  for (std::size_t k = 1; k < 6; ++k) CHECK(ri.theta[k] == doctest::Approx(kPi / 2));
  for (std::size_t i = bi.offsets[1]; i < bi.nodes(); ++i) {
    CHECK(std::abs(ri.A[i] - (-I) * (bi.eta[i] - bi.alpha)) < 1e-15);
  }
}

TEST_CASE("gamma on the imaginary axis") {
  // Node 16 of 64 sits at t = pi/2, i.e. z = i/2 - i r, whose image is purely imaginary.
  const double r = 0.2;
  const std::size_t n = 64;
  {
    const auto scene = centred(InclusionKind::Conductor, r);
    const auto b = discretize(scene, n);
    const auto rhp = build_rhp(b, scene);
    const std::size_t i = n + n / 4;
    REQUIRE(std::abs(b.eta[i].real()) < 1e-15);
    const double y = b.eta[i].imag();
    CHECK(y == doctest::Approx(-std::tan(kPi * r / 2)));
    CHECK(rhp.gamma[i] == doctest::Approx(2.0 / kPi * std::atan(y)).epsilon(1e-14));
  }
  {
    const auto scene = centred(InclusionKind::Insulator, r);
    const auto b = discretize(scene, n);
    const auto rhp = build_rhp(b, scene);
    CHECK(std::abs(rhp.gamma[n + n / 4]) < 1e-15);
    CHECK(std::abs(rhp.gamma[n + 3 * n / 4]) < 1e-15);
  }
}
