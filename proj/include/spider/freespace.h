#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spider/arrangement.h"
#include "spider/envelope.h"
#include "spider/scene.h"
#include "spider/stability.h"

namespace spider {

/// Arc of C_i traversed counterclockwise.
struct ArcEdge {
  std::size_t i = 0;
  AngleInterval interval;
};

/// Piece of segment [s_i, s_j] (i < j) traversed from parameter t0 to t1;
/// t0 > t1 means it runs from s_j's side towards s_i.
struct SegEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double t0 = 0.0;
  double t1 = 0.0;
};

using BoundaryEdge = std::variant<ArcEdge, SegEdge>;

Point2 edge_start(const BoundaryEdge& e, const Scene& scene);
Point2 edge_end(const BoundaryEdge& e, const Scene& scene);
Point2 edge_midpoint(const BoundaryEdge& e, const Scene& scene);
Point2 segment_point(const SegEdge& e, const Scene& scene, double t);

struct HullFoothold {
  std::size_t index = 0;
  /// Hull edges at the foothold; absent when the reachable hull is the
  /// foothold alone. A two-vertex hull gives the same label twice.
  std::optional<SegmentLabel> before;
  std::optional<SegmentLabel> after;
};

std::vector<HullFoothold> hull_vertex_footholds(const Scene& scene, const NeighborTable& table,
                                                double eps = kDefaultEps);

struct FreeSpaceStats {
  ArrangementStats arrangement;
  std::size_t arcs = 0;
  std::size_t segments = 0;
  std::size_t edge_count = 0;
};

/// Exact free space of a point-foothold scene. Loops keep the interior on
/// the left.
struct FreeSpace {
  std::vector<std::vector<BoundaryEdge>> loops;
  std::vector<Point2> isolated_points;
  std::vector<SegEdge> isolated_segments;
  FreeSpaceStats stats;
  std::vector<std::string> diagnostics;
};

/// Throws GeneralPositionError on GP violations and std::invalid_argument
/// for polygonal or malformed scenes.
FreeSpace compute_freespace(const Scene& scene, double eps = kDefaultEps);

/// Membership, decided by the stability predicate.
StabilityVerdict contains(const Scene& scene, Point2 P, double eps = kDefaultEps);

/// Membership read off the computed boundary: even-odd ray casting against
/// the loops, plus isolated features within `tol`.
bool boundary_contains(const FreeSpace& fs, const Scene& scene, Point2 P, double tol);

/// Distance from P to the nearest boundary edge or isolated feature.
double boundary_distance(const FreeSpace& fs, const Scene& scene, Point2 P);

}  // namespace spider
