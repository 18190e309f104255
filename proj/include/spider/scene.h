#pragma once

#include <cstddef>
#include <vector>

#include "spider/geom.h"

namespace spider {

using Polygon = std::vector<Point2>;

/// Problem input: leg length R and either point footholds or polygonal
/// foothold regions. A polygon with fewer than three vertices stands for
/// bare walls (a segment or a point).
struct Scene {
  double R = 1.0;
  std::vector<Point2> footholds;
  std::vector<Polygon> polygons;

  bool is_polygonal() const { return !polygons.empty(); }

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Scale-aware length tolerance for a scene.
inline double length_eps(const Scene& scene, double eps = kDefaultEps) { return eps * scene.R; }

struct BBox {
  Point2 min;
  Point2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool degenerate() const { return !(width() > 0.0) || !(height() > 0.0); }
};

/// Bounding box of all foothold geometry, inflated by `margin`.
BBox scene_bbox(const Scene& scene, double margin);

/// Structural checks (R > 0, finite coordinates, distinct point footholds,
/// non-crossing polygon edges). Throws std::invalid_argument.
void check_scene(const Scene& scene);

}  // namespace spider
