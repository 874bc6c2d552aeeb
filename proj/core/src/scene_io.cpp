#include "stripbie/scene_io.hpp"

#include "stripbie/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace stripbie {

namespace {

using nlohmann::json;

json to_json(const Inclusion& inc) {
  json j;
  j["kind"] = inc.kind == InclusionKind::Conductor ? "conductor" : "insulator";
  if (const auto* e = std::get_if<Ellipse>(&inc.shape)) {
    j["shape"] = "ellipse";
    j["center"] = {e->center.real(), e->center.imag()};
    j["a"] = e->a;
    j["b"] = e->b;
    j["angle"] = e->angle;
  } else {
    const auto& c = std::get<Circle>(inc.shape);
    j["shape"] = "circle";
    j["center"] = {c.center.real(), c.center.imag()};
    j["r"] = c.r;
  }
  return j;
}

Inclusion inclusion_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  InclusionKind k;
  if (kind == "conductor") {
    k = InclusionKind::Conductor;
  } else if (kind == "insulator") {
    k = InclusionKind::Insulator;
  } else {
    throw SceneError("unknown inclusion kind '" + kind + "'");
  }
  const auto& c = j.at("center");
  const cplx center(c.at(0).get<double>(), c.at(1).get<double>());
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "circle") return make_circle(k, center, j.at("r").get<double>());
  if (shape == "ellipse") {
    return make_ellipse(k, center, j.at("a").get<double>(), j.at("b").get<double>(),
                        j.value("angle", 0.0));
  }
  throw SceneError("unknown inclusion shape '" + shape + "'");
}

}  // namespace

std::string scene_to_text(const StripScene& scene) {
  json j;
  j["band_halfwidth"] = scene.band_halfwidth;
  j["inclusions"] = json::array();
  for (const auto& inc : scene.inclusions) j["inclusions"].push_back(to_json(inc));
  return j.dump(1) + "\n";
}

StripScene scene_from_text(std::string_view text) {
  StripScene scene;
  try {
    const json j = json::parse(text);
    scene.band_halfwidth = j.value("band_halfwidth", 1.0);
    for (const auto& item : j.at("inclusions")) scene.inclusions.push_back(inclusion_from_json(item));
  } catch (const json::exception& e) {
    throw SceneError(std::string("malformed scene document: ") + e.what());
  }
  return scene;
}

void save_scene(const StripScene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << scene_to_text(scene);
}

StripScene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot read scene file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scene_from_text(buf.str());
}

}  // namespace stripbie
