#include "spider/stability.h"

#include <algorithm>
#include <stdexcept>

#include "spider/parallel.h"
#include "spider/polygonal.h"

namespace spider {

std::vector<Point2> reachable_footholds(Point2 P, const Scene& scene, double eps) {
  std::vector<Point2> out;
  double reach = scene.R + eps * scene.R;
  for (Point2 s : scene.footholds)
    if (distance(P, s) <= reach) out.push_back(s);
  return out;
}

double max_angular_gap(std::vector<double> directions) {
  if (directions.empty()) return kTwoPi;
  for (double& d : directions) d = canonical_angle(d);
  std::sort(directions.begin(), directions.end());
  double gap = directions.front() + kTwoPi - directions.back();
  for (std::size_t k = 1; k < directions.size(); ++k) gap = std::max(gap, directions[k] - directions[k - 1]);
  return gap;
}

double max_angular_gap(Point2 P, std::span<const Point2> points) {
  std::vector<double> dirs;
  dirs.reserve(points.size());
  for (Point2 s : points) dirs.push_back(polar_angle(s - P));
  return max_angular_gap(std::move(dirs));
}

StabilityVerdict classify_reachable(Point2 P, std::span<const Point2> reachable, double length_tol, double eps) {
  StabilityVerdict v;
  bool on_foothold = false;
  std::vector<double> dirs;
  for (Point2 s : reachable) {
    if (distance(P, s) <= length_tol) {
      on_foothold = true;
      continue;
    }
    dirs.push_back(polar_angle(s - P));
  }
  v.gap = max_angular_gap(std::move(dirs));
  if (on_foothold) {
    v.stable = true;
    v.marginal = v.gap >= kPi - eps;
    return v;
  }
  v.stable = v.gap <= kPi + eps;
  v.marginal = std::abs(v.gap - kPi) <= eps;
  return v;
}

StabilityVerdict is_stable_point_footholds(Point2 P, const Scene& scene, double eps) {
  auto reach = reachable_footholds(P, scene, eps);
  double tol = eps * scene.R;
  StabilityVerdict v = classify_reachable(P, reach, tol, eps);
  if (!v.stable || v.marginal) return v;
  // A foothold on the rim of the leg disk is lost under an arbitrarily small
  // move, so P is also at the limit when the others alone do not hold it.
  std::vector<Point2> inner;
  for (Point2 s : reach)
    if (distance(P, s) < scene.R - tol) inner.push_back(s);
  if (inner.size() == reach.size()) return v;
  StabilityVerdict w = classify_reachable(P, inner, tol, eps);
  v.marginal = !w.stable || w.marginal;
  return v;
}

Point2 OccupancyGrid::cell_center(int ix, int iy) const {
  return {bbox.min.x + (ix + 0.5) * bbox.width() / nx, bbox.min.y + (iy + 0.5) * bbox.height() / ny};
}

std::size_t OccupancyGrid::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

double OccupancyGrid::cell_diagonal() const { return std::hypot(bbox.width() / nx, bbox.height() / ny); }

OccupancyGrid sample_grid(const BBox& bbox, int nx, int ny, const std::function<bool(Point2)>& stable) {
  if (bbox.degenerate()) throw std::invalid_argument("degenerate bounding box");
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid resolution must be at least 2x2");
  OccupancyGrid g;
  g.bbox = bbox;
  g.nx = nx;
  g.ny = ny;
  g.cells.assign(static_cast<std::size_t>(nx) * ny, 0);
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t iy) {
    for (int ix = 0; ix < nx; ++ix)
      g.cells[iy * nx + ix] = stable(g.cell_center(ix, static_cast<int>(iy))) ? 1 : 0;
  });
  return g;
}

OccupancyGrid grid_sample_freespace(const Scene& scene, const BBox& bbox, int nx, int ny, double eps) {
  if (scene.is_polygonal()) return sample_freespace_polygonal(scene, bbox, nx, ny, eps);
  return sample_grid(bbox, nx, ny, [&](Point2 p) { return is_stable_point_footholds(p, scene, eps).stable; });
}

}  // namespace spider
