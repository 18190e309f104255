#pragma once

#include <string>

#include "spider/freespace.h"
#include "spider/polygonal.h"
#include "spider/scene.h"
#include "spider/stability.h"

namespace spider {

struct SvgLayers {
  const FreeSpace* freespace = nullptr;
  const OccupancyGrid* grid = nullptr;
  const ContactTracings* curves = nullptr;
};

/// Deterministic SVG 1.1 drawing of a scene and any of its computed layers,
/// framed by `bbox` (world y points up).
std::string render_svg(const Scene& scene, const SvgLayers& layers, const BBox& bbox);

}  // namespace spider
