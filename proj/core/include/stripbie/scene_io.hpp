#pragma once

#include "stripbie/geometry.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace stripbie {

/// JSON document with one record per inclusion:
///   {"kind": "conductor", "shape": "ellipse", "center": [x, y], "a": .., "b": .., "angle": ..}
///   {"kind": "insulator", "shape": "circle", "center": [x, y], "r": ..}
/// Doubles are written in shortest round-trip form, so save/load is lossless.
std::string scene_to_text(const StripScene& scene);
StripScene scene_from_text(std::string_view text);

void save_scene(const StripScene& scene, const std::filesystem::path& path);
StripScene load_scene(const std::filesystem::path& path);

}  // namespace stripbie
