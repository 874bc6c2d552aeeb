#include "stripbie/geometry.hpp"

#include "stripbie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <random>
#include <unordered_map>

namespace stripbie {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx rotation(double angle) { return std::polar(1.0, angle); }

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

double smallest_axis(const Shape& shape) {
  return std::visit(overloaded{[](const Ellipse& e) { return std::min(e.a, e.b); },
                               [](const Circle& c) { return c.r; }},
                    shape);
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

bool operator==(const Ellipse& l, const Ellipse& r) {
  return l.center == r.center && l.a == r.a && l.b == r.b && l.angle == r.angle;
}

bool operator==(const Circle& l, const Circle& r) { return l.center == r.center && l.r == r.r; }

bool operator==(const Inclusion& l, const Inclusion& r) {
  return l.kind == r.kind && l.shape == r.shape;
}

cplx Inclusion::center() const {
  return std::visit([](const auto& s) { return s.center; }, shape);
}

cplx Inclusion::point(double t) const {
  return std::visit(
      overloaded{[t](const Ellipse& e) {
                   return e.center + rotation(e.angle) * cplx(e.a * std::cos(t), -e.b * std::sin(t));
                 },
                 [t](const Circle& c) { return c.center + std::polar(c.r, -t); }},
      shape);
}

cplx Inclusion::tangent(double t) const {
  return std::visit(
      overloaded{[t](const Ellipse& e) {
                   return rotation(e.angle) * cplx(-e.a * std::sin(t), -e.b * std::cos(t));
                 },
                 [t](const Circle& c) { return cplx(0.0, -1.0) * std::polar(c.r, -t); }},
      shape);
}

cplx Inclusion::second_derivative(double t) const {
  return std::visit(
      overloaded{[t](const Ellipse& e) {
                   return rotation(e.angle) * cplx(-e.a * std::cos(t), e.b * std::sin(t));
                 },
                 [t](const Circle& c) { return -std::polar(c.r, -t); }},
      shape);
}

double Inclusion::circumradius() const {
  return std::visit(overloaded{[](const Ellipse& e) { return std::max(e.a, e.b); },
                               [](const Circle& c) { return c.r; }},
                    shape);
}

double Inclusion::area() const {
  return std::visit(overloaded{[](const Ellipse& e) { return kPi * e.a * e.b; },
                               [](const Circle& c) { return kPi * c.r * c.r; }},
                    shape);
}

bool Inclusion::contains(cplx z) const {
  return std::visit(overloaded{[z](const Ellipse& e) {
                                 const cplx w = (z - e.center) * rotation(-e.angle);
                                 const double u = w.real() / e.a;
                                 const double v = w.imag() / e.b;
                                 return u * u + v * v < 1.0;
                               },
                               [z](const Circle& c) { return std::abs(z - c.center) < c.r; }},
                    shape);
}

std::pair<double, double> Inclusion::y_extent() const {
  return std::visit(overloaded{[](const Ellipse& e) {
                                 const double s = std::sin(e.angle);
                                 const double c = std::cos(e.angle);
                                 const double half = std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
                                 return std::pair{e.center.imag() - half, e.center.imag() + half};
                               },
                               [](const Circle& c) {
                                 return std::pair{c.center.imag() - c.r, c.center.imag() + c.r};
                               }},
                    shape);
}

std::pair<double, double> Inclusion::x_extent() const {
  return std::visit(overloaded{[](const Ellipse& e) {
                                 const double s = std::sin(e.angle);
                                 const double c = std::cos(e.angle);
                                 const double half = std::sqrt(e.a * e.a * c * c + e.b * e.b * s * s);
                                 return std::pair{e.center.real() - half, e.center.real() + half};
                               },
                               [](const Circle& c) {
                                 return std::pair{c.center.real() - c.r, c.center.real() + c.r};
                               }},
                    shape);
}

Inclusion make_circle(InclusionKind kind, cplx center, double r) {
  return Inclusion{kind, Circle{center, r}};
}

Inclusion make_ellipse(InclusionKind kind, cplx center, double a, double b, double angle) {
  return Inclusion{kind, Ellipse{center, a, b, angle}};
}

std::size_t StripScene::conductor_count() const {
  return static_cast<std::size_t>(
      std::count_if(inclusions.begin(), inclusions.end(),
                    [](const Inclusion& inc) { return inc.kind == InclusionKind::Conductor; }));
}

void StripScene::validate() const {
  if (!(band_halfwidth > 0.0) || !std::isfinite(band_halfwidth)) {
    throw SceneError("band half-width must be positive and finite");
  }
  bool seen_insulator = false;
  for (std::size_t k = 0; k < inclusions.size(); ++k) {
    const Inclusion& inc = inclusions[k];
    std::ostringstream where;
    where << "inclusion " << k;
    if (inc.kind == InclusionKind::Insulator) {
      seen_insulator = true;
    } else if (seen_insulator) {
      throw SceneError(where.str() + ": conductors must precede insulators");
    }
    const bool shape_ok = std::visit(
        overloaded{[](const Ellipse& e) {
                     return finite_positive(e.a) && finite_positive(e.b) && std::isfinite(e.angle);
                   },
                   [](const Circle& c) { return finite_positive(c.r); }},
        inc.shape);
    const cplx c = inc.center();
    if (!shape_ok || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw SceneError(where.str() + ": semi-axes/radius must be positive and finite");
    }
    const auto [ylo, yhi] = inc.y_extent();
    if (!(ylo > 0.0) || !(yhi < 1.0)) {
      throw SceneError(where.str() + ": touches or crosses a wall of the strip");
    }
    const auto [xlo, xhi] = inc.x_extent();
    if (xlo < -band_halfwidth || xhi > band_halfwidth) {
      throw SceneError(where.str() + ": leaves the band |x| <= " + std::to_string(band_halfwidth));
    }
  }
  if (inclusions.size() > 1 && !(min_pairwise_gap(*this) > 0.0)) {
    throw SceneError("inclusions overlap or touch");
  }
}

std::optional<std::size_t> StripScene::covering(cplx z) const {
  for (std::size_t k = 0; k < inclusions.size(); ++k) {
    if (inclusions[k].contains(z)) return k;
  }
  return std::nullopt;
}

double boundary_gap(const Inclusion& lhs, const Inclusion& rhs, int samples) {
  const auto* cl = std::get_if<Circle>(&lhs.shape);
  const auto* cr = std::get_if<Circle>(&rhs.shape);
  if (cl && cr) {
    return std::max(0.0, std::abs(cl->center - cr->center) - cl->r - cr->r);
  }
  std::vector<cplx> pl(samples), pr(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    pl[i] = lhs.point(t);
    pr[i] = rhs.point(t);
  }
  for (int i = 0; i < samples; ++i) {
    if (rhs.contains(pl[i]) || lhs.contains(pr[i])) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& p : pl) {
    for (const cplx& q : pr) best = std::min(best, std::norm(p - q));
  }
  return std::sqrt(best);
}

double min_pairwise_gap(const StripScene& scene, int samples) {
  const auto& inc = scene.inclusions;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inc.size(); ++i) {
    for (std::size_t j = i + 1; j < inc.size(); ++j) {
      const double bound =
          std::abs(inc[i].center() - inc[j].center()) - inc[i].circumradius() - inc[j].circumradius();
      if (bound >= best) continue;
      best = std::min(best, boundary_gap(inc[i], inc[j], samples));
    }
  }
  return best;
}

double min_wall_clearance(const StripScene& scene) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& inc : scene.inclusions) {
    const auto [lo, hi] = inc.y_extent();
    best = std::min({best, lo, 1.0 - hi});
  }
  return best;
}

double concentration_circles(std::size_t m, double r) {
  return static_cast<double>(m) * r * r * kPi / 2.0;
}

double concentration_ellipses(std::size_t m, double a, double b) {
  return static_cast<double>(m) * a * b * kPi / 2.0;
}

double slit_density(std::size_t m, double b) { return static_cast<double>(m) * b * b / 2.0; }

double scene_concentration(const StripScene& scene, std::optional<InclusionKind> kind) {
  double area = 0.0;
  for (const auto& inc : scene.inclusions) {
    if (!kind || inc.kind == *kind) area += inc.area();
  }
  return area / (2.0 * scene.band_halfwidth);
}

// ---------------------------------------------------------------------------
// Published example layouts

namespace {

void require_open(const char* example, const char* name, double v, double lo, double hi) {
  if (!(v > lo && v < hi)) {
    std::ostringstream os;
    os << example << ": parameter " << name << " = " << v << " outside (" << lo << ", " << hi << ")";
    throw RangeError(os.str());
  }
}

constexpr double kRowCenters[5] = {-0.8, -0.4, 0.0, 0.4, 0.8};

}  // namespace

StripScene paper_example(ExampleId id, const ExampleParams& p) {
  StripScene scene;
  auto& out = scene.inclusions;
  const auto ins = InclusionKind::Insulator;
  const auto con = InclusionKind::Conductor;
  switch (id) {
    case ExampleId::Ex1CaseI:
      require_open("ex1-case1", "r", p.r, 0.0, 0.2);
      for (double x : kRowCenters) out.push_back(make_circle(ins, {x, 0.5}, p.r));
      break;
    case ExampleId::Ex1CaseII: {
      require_open("ex1-case2", "r", p.r, 0.0, 0.2);
      const cplx centers[5] = {{-0.8, 0.5}, {-0.4, 0.3}, {0.0, 0.5}, {0.4, 0.7}, {0.8, 0.5}};
      for (cplx c : centers) out.push_back(make_circle(ins, c, p.r));
      break;
    }
    case ExampleId::Ex2:
      require_open("ex2", "r", p.r, 0.0, 0.1);
      for (int k = 1; k <= 10; ++k) {
        const double x = -0.9 + 0.2 * (k - 1);
        for (double y : {0.25, 0.5, 0.75}) out.push_back(make_circle(ins, {x, y}, p.r));
      }
      break;
    case ExampleId::Ex3:
      require_open("ex3", "r", p.r, 0.0, 0.1);
      for (int k = 1; k <= 10; ++k) {
        const double x = -0.9 + 0.2 * (k - 1);
        for (double y : {0.1, 0.3, 0.5, 0.7, 0.9}) out.push_back(make_circle(ins, {x, y}, p.r));
      }
      break;
    case ExampleId::Ex4:
      require_open("ex4", "a", p.a, 0.0, 0.2);
      require_open("ex4", "b", p.b, 0.0, 0.5);
      for (double x : kRowCenters) out.push_back(make_ellipse(con, {x, 0.5}, p.a, p.b));
      break;
    case ExampleId::Ex5:
      require_open("ex5", "a", p.a, 0.0, 0.05);
      require_open("ex5", "b", p.b, 0.0, 0.05);
      for (int k = 1; k <= 20; ++k) {
        const double x = -0.95 + (k - 1) / 10.0;
        for (int j = 1; j <= 10; ++j) {
          const double y = 0.05 + (j - 1) / 10.0;
          out.push_back(make_ellipse(con, {x, y}, p.a, p.b));
        }
      }
      break;
  }
  return scene;
}

std::string to_string(ExampleId id) {
  switch (id) {
    case ExampleId::Ex1CaseI: return "ex1-case1";
    case ExampleId::Ex1CaseII: return "ex1-case2";
    case ExampleId::Ex2: return "ex2";
    case ExampleId::Ex3: return "ex3";
    case ExampleId::Ex4: return "ex4";
    case ExampleId::Ex5: return "ex5";
  }
  return "unknown";
}

ExampleId example_from_string(const std::string& name) {
  for (ExampleId id : {ExampleId::Ex1CaseI, ExampleId::Ex1CaseII, ExampleId::Ex2, ExampleId::Ex3,
                       ExampleId::Ex4, ExampleId::Ex5}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown example id '" + name + "'");
}

// ---------------------------------------------------------------------------
// Random placement

double effective_min_gap(const RandomSceneSpec& spec) {
  if (spec.min_gap > 0.0) return spec.min_gap;
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& g : spec.groups) {
    if (g.count > 0) smallest = std::min(smallest, smallest_axis(g.shape));
  }
  return std::isfinite(smallest) ? 0.1 * smallest : 0.0;
}

namespace {

// Buckets inclusion indices by center so that candidate checks only visit
// neighbours within one cell.
class CenterGrid {
 public:
  CenterGrid(double band, double cell) : band_(band), cell_(cell) {}

  void insert(cplx c, std::size_t index) { cells_[key(cell_x(c), cell_y(c))].push_back(index); }

  template <class Fn>
  bool none_of_neighbours(cplx c, Fn&& conflicts) const {
    const long cx = cell_x(c);
    const long cy = cell_y(c);
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (std::size_t idx : it->second) {
          if (conflicts(idx)) return false;
        }
      }
    }
    return true;
  }

 private:
  long cell_x(cplx c) const { return static_cast<long>(std::floor((c.real() + band_) / cell_)); }
  long cell_y(cplx c) const { return static_cast<long>(std::floor(c.imag() / cell_)); }
  static long long key(long x, long y) { return (static_cast<long long>(x) << 32) ^ (y & 0xffffffffLL); }

  double band_;
  double cell_;
  std::unordered_map<long long, std::vector<std::size_t>> cells_;
};

}  // namespace

StripScene random_scene(const RandomSceneSpec& spec) {
  StripScene scene;
  scene.band_halfwidth = spec.band_halfwidth;

  std::vector<RandomGroup> groups = spec.groups;
  std::stable_sort(groups.begin(), groups.end(), [](const RandomGroup& l, const RandomGroup& r) {
    return l.kind == InclusionKind::Conductor && r.kind == InclusionKind::Insulator;
  });

  double total_area = 0.0;
  double max_radius = 0.0;
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.count == 0) continue;
    const Inclusion probe{g.kind, g.shape};
    if (!(smallest_axis(g.shape) > 0.0)) throw SceneError("random group with non-positive size");
    total_area += static_cast<double>(g.count) * probe.area();
    max_radius = std::max(max_radius, probe.circumradius());
    total += g.count;
  }
  if (total == 0) return scene;
  const double fraction = total_area / (2.0 * spec.band_halfwidth);
  if (fraction >= 0.6) {
    throw SceneError("requested packing fraction " + std::to_string(fraction) + " is not feasible");
  }

  const double gap = effective_min_gap(spec);
  const double wall_gap = spec.wall_gap > 0.0 ? spec.wall_gap : gap;
  std::mt19937_64 rng(spec.seed);
  CenterGrid grid(spec.band_halfwidth, 2.0 * max_radius + gap);
  scene.inclusions.reserve(total);

  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.count; ++i) {
      Inclusion candidate{g.kind, g.shape};
      const double radius = candidate.circumradius();
      const double mx = radius + gap;
      const double my = radius + wall_gap;
      if (2.0 * mx >= 2.0 * spec.band_halfwidth || 2.0 * my >= 1.0) {
        throw PackingError("inclusion larger than the placement region", scene.inclusions.size());
      }
      bool placed = false;
      for (std::size_t attempt = 0; attempt < spec.max_attempts && !placed; ++attempt) {
        const double x = -spec.band_halfwidth + mx + unit_uniform(rng) * 2.0 * (spec.band_halfwidth - mx);
        const double y = my + unit_uniform(rng) * (1.0 - 2.0 * my);
        const double angle = g.random_angle ? unit_uniform(rng) * kPi : 0.0;
        std::visit(overloaded{[&](Ellipse& e) {
                                e.center = {x, y};
                                if (g.random_angle) e.angle = angle;
                              },
                              [&](Circle& c) { c.center = {x, y}; }},
                   candidate.shape);
        const cplx c = candidate.center();
        placed = grid.none_of_neighbours(c, [&](std::size_t idx) {
          const Inclusion& other = scene.inclusions[idx];
          const double d = std::abs(other.center() - c);
          if (d >= other.circumradius() + radius + gap) return false;
          return boundary_gap(candidate, other) < gap;
        });
      }
      if (!placed) {
        throw PackingError("could not place inclusion " + std::to_string(scene.inclusions.size()) +
                               " after " + std::to_string(spec.max_attempts) + " attempts",
                           scene.inclusions.size());
      }
      grid.insert(candidate.center(), scene.inclusions.size());
      scene.inclusions.push_back(candidate);
    }
  }
  return scene;
}

RandomSceneSpec random_circles_spec(std::size_t conductors, std::size_t insulators, double r,
                                    std::uint64_t seed) {
  RandomSceneSpec spec;
  spec.groups.push_back({InclusionKind::Conductor, conductors, Circle{{}, r}, false});
  spec.groups.push_back({InclusionKind::Insulator, insulators, Circle{{}, r}, false});
  spec.seed = seed;
  return spec;
}

RandomSceneSpec random_ellipses_circles_spec(std::size_t conductors, std::size_t insulators,
                                             double r, std::uint64_t seed) {
  RandomSceneSpec spec;
  spec.groups.push_back({InclusionKind::Conductor, conductors, Ellipse{{}, 2.0 * r, 0.5 * r, 0.0}, true});
  spec.groups.push_back({InclusionKind::Insulator, insulators, Circle{{}, r}, false});
  spec.seed = seed;
  return spec;
}

}  // namespace stripbie
