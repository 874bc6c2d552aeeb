#include "doctest.h"

#include <stripbie/errors.hpp>
#include <stripbie/geometry.hpp>
#include <stripbie/scene_io.hpp>

#include <filesystem>

using namespace stripbie;

TEST_CASE("scene text round trip is lossless") {
  const auto scene = random_scene(random_ellipses_circles_spec(25, 25, 0.013, 99));
  const auto text = scene_to_text(scene);
  CHECK(scene_from_text(text) == scene);
  CHECK(scene_to_text(scene_from_text(text)) == text);
}

TEST_CASE("scene files") {
  const auto scene = paper_example(ExampleId::Ex4, {.a = 0.19, .b = 0.019});
  const auto path = std::filesystem::temp_directory_path() / "stripbie_scene_io_test.json";
  save_scene(scene, path);
  CHECK(load_scene(path) == scene);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_scene(path), SceneError);
}

TEST_CASE("malformed scene documents") {
  CHECK_THROWS_AS(scene_from_text("not json"), SceneError);
  CHECK_THROWS_AS(scene_from_text(R"({"inclusions": [{"kind": "metal", "shape": "circle",
      "center": [0, 0.5], "r": 0.1}]})"),
                  SceneError);
  CHECK_THROWS_AS(scene_from_text(R"({"inclusions": [{"kind": "insulator", "shape": "circle",
      "center": [0, 0.5]}]})"),
                  SceneError);
  const auto s = scene_from_text(R"({"inclusions": [{"kind": "conductor", "shape": "ellipse",
      "center": [0.2, 0.5], "a": 0.1, "b": 0.05, "angle": 0.5}]})");
  REQUIRE(s.size() == 1);
  CHECK(s.inclusions[0].kind == InclusionKind::Conductor);
  CHECK(std::get<Ellipse>(s.inclusions[0].shape).angle == 0.5);
}
