#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace stripbie {

using cplx = std::complex<double>;

enum class InclusionKind { Conductor, Insulator };

/// Ellipse with semi-axis `a` along the rotated x-direction and `b` along the
/// rotated y-direction. `angle` rotates the (a, b) frame counterclockwise.
struct Ellipse {
  cplx center;
  double a = 0.0;
  double b = 0.0;
  double angle = 0.0;
};

struct Circle {
  cplx center;
  double r = 0.0;
};

using Shape = std::variant<Ellipse, Circle>;

/// A single conductor or insulator. Boundaries are parametrized clockwise:
///   ellipse  z0 + e^{i angle} (a cos t - i b sin t)
///   circle   z0 + r e^{-i t}
struct Inclusion {
  InclusionKind kind = InclusionKind::Insulator;
  Shape shape;

  cplx center() const;
  cplx point(double t) const;
  cplx tangent(double t) const;
  cplx second_derivative(double t) const;
  double circumradius() const;
  double area() const;
  /// Strict interior test.
  bool contains(cplx z) const;
  /// Lowest and highest y reached by the boundary.
  std::pair<double, double> y_extent() const;
  std::pair<double, double> x_extent() const;

  friend bool operator==(const Inclusion&, const Inclusion&);
};

bool operator==(const Ellipse&, const Ellipse&);
bool operator==(const Circle&, const Circle&);

Inclusion make_circle(InclusionKind kind, cplx center, double r);
Inclusion make_ellipse(InclusionKind kind, cplx center, double a, double b, double angle = 0.0);

/// Inclusions inside the strip 0 < Im z < 1, conductors listed before insulators.
struct StripScene {
  std::vector<Inclusion> inclusions;
  double band_halfwidth = 1.0;

  std::size_t size() const { return inclusions.size(); }
  std::size_t conductor_count() const;
  std::size_t insulator_count() const { return size() - conductor_count(); }

  /// Throws SceneError when an invariant is broken.
  void validate() const;
  /// Index of the inclusion whose interior contains z, if any.
  std::optional<std::size_t> covering(cplx z) const;

  friend bool operator==(const StripScene&, const StripScene&) = default;
};

/// Minimum distance between two inclusion boundaries, from dense sampling.
/// Returns 0 when the inclusions overlap.
double boundary_gap(const Inclusion& lhs, const Inclusion& rhs, int samples = 256);

/// Smallest gap over all pairs, using circumcircles to skip distant pairs.
double min_pairwise_gap(const StripScene& scene, int samples = 256);

/// Smallest distance from any inclusion to either wall.
double min_wall_clearance(const StripScene& scene);

double concentration_circles(std::size_t m, double r);
double concentration_ellipses(std::size_t m, double a, double b);
double slit_density(std::size_t m, double b);

/// Inclusion area over the area of the band [-w, w] x [0, 1].
double scene_concentration(const StripScene& scene, std::optional<InclusionKind> kind = std::nullopt);

enum class ExampleId { Ex1CaseI, Ex1CaseII, Ex2, Ex3, Ex4, Ex5 };

struct ExampleParams {
  double r = 0.0;  // circle radius (Ex1..Ex3)
  double a = 0.0;  // ellipse x semi-axis (Ex4, Ex5)
  double b = 0.0;  // ellipse y semi-axis (Ex4, Ex5)
};

/// Fixed-layout geometries of the published examples. Ex1..Ex3 are circular
/// insulators, Ex4 and Ex5 elliptic conductors.
StripScene paper_example(ExampleId id, const ExampleParams& params);

std::string to_string(ExampleId id);
ExampleId example_from_string(const std::string& name);

/// One family of identical inclusions for random placement.
struct RandomGroup {
  InclusionKind kind = InclusionKind::Insulator;
  std::size_t count = 0;
  Shape shape;  // center ignored
  bool random_angle = false;
};

struct RandomSceneSpec {
  std::vector<RandomGroup> groups;
  /// Pairwise boundary gap; non-positive selects 0.1 x the smallest semi-axis.
  double min_gap = 0.0;
  /// Wall clearance; non-positive means "same as min_gap".
  double wall_gap = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 100000;
  double band_halfwidth = 1.0;
};

/// Uniform rejection sampling of non-overlapping inclusions. Conductor groups
/// are placed first. Throws PackingError naming the first inclusion that could
/// not be placed.
StripScene random_scene(const RandomSceneSpec& spec);

double effective_min_gap(const RandomSceneSpec& spec);

/// Mixed circle layout: `conductors` + `insulators` circles of radius r.
RandomSceneSpec random_circles_spec(std::size_t conductors, std::size_t insulators, double r,
                                    std::uint64_t seed);

/// Elliptic conductors of area pi r^2 with axis ratio 4 at random angles plus
/// circular insulators of radius r.
RandomSceneSpec random_ellipses_circles_spec(std::size_t conductors, std::size_t insulators,
                                             double r, std::uint64_t seed);

}  // namespace stripbie
