#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spider/arrangement.h"
#include "spider/envelope.h"
#include "spider/freespace.h"
#include "spider/polygonal.h"
#include "spider/scene.h"
#include "spider/stability.h"

namespace spider {

using Json = nlohmann::ordered_json;

/// Round to 12 significant digits so emitted numbers are stable across
/// platforms and runs.
double round12(double x);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// Parse {"R": r, "footholds": [[x, y], ...]} or {"R": r, "polygons":
/// [[[x, y], ...], ...]}. Throws std::invalid_argument with a descriptive
/// message.
Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);

/// Full-precision scene document; parse_scene(scene_to_json(s)) == s.
std::string scene_to_json(const Scene& scene);

Json freespace_json(const FreeSpace& fs, const Scene& scene);
Json grid_json(const OccupancyGrid& grid);
OccupancyGrid grid_from_json(const Json& j);
Json curves_json(const ContactTracings& tracings);
Json stats_json(const ArrangementStats& stats);
Json violations_json(const std::vector<Violation>& violations);
Json pieces_json(const std::vector<TorusPiece>& pieces);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace spider
