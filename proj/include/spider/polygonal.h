#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spider/geom.h"
#include "spider/scene.h"
#include "spider/stability.h"

namespace spider {

/// Relative interior of a polygon edge.
struct Wall {
  Point2 a;
  Point2 b;
  std::size_t polygon = 0;
};

/// Polygon vertex; vertices shared by several edges are one corner.
struct Corner {
  Point2 p;
  std::vector<std::size_t> walls;
};

std::vector<Wall> scene_walls(const Scene& scene);
std::vector<Corner> scene_corners(const Scene& scene, const std::vector<Wall>& walls, double eps = kDefaultEps);

/// Convex hull of the foothold points within R of P (walls clipped to the
/// disk, plus point-only polygons). Empty when nothing is reachable.
std::vector<Point2> reachable_hull(Point2 P, std::span<const Wall> walls, double R);
std::vector<Point2> reachable_hull(Point2 P, const Scene& scene);

StabilityVerdict is_stable_segments(Point2 P, std::span<const Wall> walls, double R, double eps = kDefaultEps);
StabilityVerdict is_stable_polygonal(Point2 P, const Scene& scene, double eps = kDefaultEps);

/// Strict interior of a polygon with at least three vertices (even-odd).
bool point_in_polygon(const Polygon& poly, Point2 p);

/// F = F_e ∪ S on a grid: cells inside a foothold polygon are stable outright.
OccupancyGrid sample_freespace_polygonal(const Scene& scene, const BBox& bbox, int nx, int ny,
                                         double eps = kDefaultEps);

enum class ContactKind { CircularArc, EllipseArc, ConchoidArc, Segment };

const char* to_string(ContactKind kind);

/// Ladder placement on a tracing: midpoint, the two ladder ends and the
/// two contact points.
struct LadderPlacement {
  Point2 midpoint;
  Point2 end_a;
  Point2 end_b;
  Point2 contact_a;
  Point2 contact_b;
};

/// Locus of the ladder midpoint under two contacts (ladder length 2R).
/// Parameters: CircularArc the ladder angle about the corner; EllipseArc the
/// ladder angle; ConchoidArc the wall parameter of the ladder end; Segment
/// the signed distance of the midpoint from the first corner.
struct ContactCurve {
  ContactKind kind = ContactKind::CircularArc;
  std::vector<std::size_t> corners;
  std::vector<std::size_t> walls;
  double t0 = 0.0;
  double t1 = 0.0;
  /// Sub-intervals of [t0, t1] where the midpoint lies between the contacts
  /// and the ladder is free.
  std::vector<std::pair<double, double>> relevant;

  // Geometry of the defining features.
  double R = 1.0;
  Point2 c1, c2;
  Wall w1, w2;

  LadderPlacement at(double t) const;
  bool is_relevant(double t) const;
};

struct ContactTracings {
  std::vector<ContactCurve> curves;
  /// Feature pairs left out (parallel wall pairs).
  std::vector<std::string> skipped;
  /// Near-degeneracies detected for hypotheses H2 to H4.
  std::vector<std::string> hypothesis_warnings;
};

class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& what, std::vector<std::string> report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const std::vector<std::string>& report() const { return report_; }

 private:
  std::vector<std::string> report_;
};

/// All 2-contact tracings of a ladder of half-length R. Throws
/// HypothesisError when a polygon is degenerate (fewer than three vertices
/// or zero area).
ContactTracings two_contact_tracings(const Scene& scene, double eps = kDefaultEps);

/// True when the open ladder [a, b] crosses no wall and stays out of the
/// polygon interiors.
bool ladder_is_free(Point2 a, Point2 b, const Scene& scene, std::span<const Wall> walls, double eps = kDefaultEps);

}  // namespace spider
