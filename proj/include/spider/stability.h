#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spider/geom.h"
#include "spider/scene.h"

namespace spider {

struct StabilityVerdict {
  bool stable = false;
  /// At the limit of stability. Implies stable.
  bool marginal = false;
  /// Largest angular gap seen from the placement (2π when nothing usable).
  double gap = kTwoPi;
};

/// Footholds within the closed disk of radius R around P.
std::vector<Point2> reachable_footholds(Point2 P, const Scene& scene, double eps = kDefaultEps);

/// Largest gap between consecutive polar directions from P to the points.
double max_angular_gap(Point2 P, std::span<const Point2> points);

/// Largest gap between consecutive directions (any reals, taken mod 2π).
double max_angular_gap(std::vector<double> directions);

/// Stability of a set of reachable footholds seen from P. A foothold within
/// eps·scale of P makes P stable outright.
StabilityVerdict classify_reachable(Point2 P, std::span<const Point2> reachable, double length_tol,
                                    double eps = kDefaultEps);

/// Stable iff P lies in the hull of its reachable footholds. Marginal when
/// P is on that hull's boundary, or when dropping the footholds on the rim
/// of the leg disk (|Ps| = R within eps) leaves P unstable or marginal.
StabilityVerdict is_stable_point_footholds(Point2 P, const Scene& scene, double eps = kDefaultEps);

/// Boolean cell grid sampled at cell centers, row-major (row = y index).
struct OccupancyGrid {
  BBox bbox;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> cells;

  Point2 cell_center(int ix, int iy) const;
  bool at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx + ix] != 0; }
  std::size_t count() const;
  double cell_diagonal() const;
};

/// Sample `stable` at every cell center of the grid (in parallel, result
/// independent of evaluation order). Throws on degenerate bbox or nx, ny < 2.
OccupancyGrid sample_grid(const BBox& bbox, int nx, int ny, const std::function<bool(Point2)>& stable);

/// Grid of the stability predicate for point or polygonal scenes.
OccupancyGrid grid_sample_freespace(const Scene& scene, const BBox& bbox, int nx, int ny, double eps = kDefaultEps);

}  // namespace spider
