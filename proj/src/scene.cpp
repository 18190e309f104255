#include "spider/scene.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace spider {

BBox scene_bbox(const Scene& scene, double margin) {
  double inf = std::numeric_limits<double>::infinity();
  BBox box{{inf, inf}, {-inf, -inf}};
  auto grow = [&](Point2 p) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  };
  for (Point2 p : scene.footholds) grow(p);
  for (const Polygon& poly : scene.polygons)
    for (Point2 p : poly) grow(p);
  if (box.min.x > box.max.x) box = BBox{{0.0, 0.0}, {0.0, 0.0}};
  box.min = box.min - Point2{margin, margin};
  box.max = box.max + Point2{margin, margin};
  return box;
}

void check_scene(const Scene& scene) {
  if (!(scene.R > 0.0) || !std::isfinite(scene.R)) throw std::invalid_argument("R must be positive");
  if (!scene.footholds.empty() && !scene.polygons.empty())
    throw std::invalid_argument("scene must have either footholds or polygons, not both");
  for (Point2 p : scene.footholds)
    if (!is_finite(p)) throw std::invalid_argument("non-finite foothold coordinate");
  for (std::size_t i = 0; i < scene.footholds.size(); ++i)
    for (std::size_t j = i + 1; j < scene.footholds.size(); ++j)
      if (scene.footholds[i] == scene.footholds[j])
        throw std::invalid_argument("duplicate footholds " + std::to_string(i) + " and " + std::to_string(j));

  struct Edge {
    Point2 a, b;
  };
  std::vector<Edge> edges;
  for (const Polygon& poly : scene.polygons) {
    if (poly.empty()) throw std::invalid_argument("empty polygon");
    for (Point2 p : poly)
      if (!is_finite(p)) throw std::invalid_argument("non-finite polygon coordinate");
    if (poly.size() == 2) edges.push_back({poly[0], poly[1]});
    if (poly.size() >= 3)
      for (std::size_t k = 0; k < poly.size(); ++k) edges.push_back({poly[k], poly[(k + 1) % poly.size()]});
  }
  double eps = length_eps(scene);
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (segments_properly_cross(edges[i].a, edges[i].b, edges[j].a, edges[j].b, eps))
        throw std::invalid_argument("polygon edges cross");
}

}  // namespace spider
