#pragma once

// Planar primitives shared by every module: points, angles on S^1,
// circles and the handful of predicates built on them.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spider {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Default scene tolerance. Length comparisons use kDefaultEps * R.
inline constexpr double kDefaultEps = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Point2 a) { return a.x * a.x + a.y * a.y; }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline double polar_angle(Point2 v) { return std::atan2(v.y, v.x); }
inline Point2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Point2 lerp(Point2 a, Point2 b, double t) { return a + t * (b - a); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Reduce any real to [0, 2π).
double canonical_angle(double radians);

/// Reduce `radians` into [center - π, center + π).
double lift_near(double radians, double center);

/// An element of S^1, stored as its representative in [0, 2π).
class Angle {
 public:
  Angle() = default;
  explicit Angle(double radians) : value_(canonical_angle(radians)) {}

  double value() const { return value_; }

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  double value_ = 0.0;
};

/// Signed distance on S^1 from a to b, in (-π, π].
double angular_difference(Angle a, Angle b);

/// Counterclockwise interval [start, start + extent] on S^1.
/// extent == 2π is the full circle.
struct AngleInterval {
  Angle start;
  double extent = 0.0;

  AngleInterval() = default;
  AngleInterval(Angle s, double e);

  static AngleInterval full() { return AngleInterval(Angle(0.0), kTwoPi); }
  static AngleInterval from_lifted(double lo, double hi) { return AngleInterval(Angle(lo), hi - lo); }

  bool is_full() const { return extent >= kTwoPi; }
  Angle end() const { return Angle(start.value() + extent); }
  /// Lifted end, start.value() + extent (may exceed 2π).
  double lifted_end() const { return start.value() + extent; }
  bool contains(Angle a, double eps = 0.0) const;
  /// Offset of `a` from start measured counterclockwise, in [0, 2π).
  double offset_of(Angle a) const { return canonical_angle(a.value() - start.value()); }

  /// The interval as one or two ranges of the lift [0, 2π].
  std::vector<std::pair<double, double>> lifted_ranges() const;
};

struct Circle {
  Point2 center;
  double radius = 1.0;

  Circle() = default;
  Circle(Point2 c, double r);

  Point2 point_at(double theta) const { return center + radius * unit_vector(theta); }
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

/// Sign of the signed area of abc. Zero when c lies within `eps` (length
/// units) of the line ab, measured against the longer of |ab| and |ac|.
Sign orient(Point2 a, Point2 b, Point2 c, double eps = kDefaultEps);

/// Indices of the convex hull vertices, counterclockwise, starting at the
/// lowest-then-leftmost point. Collinear boundary points and duplicates are
/// dropped; degenerate inputs give 1 or 2 indices.
std::vector<std::size_t> convex_hull_indices(std::span<const Point2> points, double eps = kDefaultEps);

/// Convex hull vertices, counterclockwise. Throws on empty input.
std::vector<Point2> convex_hull(std::span<const Point2> points, double eps = kDefaultEps);

/// Point-in-convex-polygon test on a ccw hull (1, 2 or more vertices).
/// Returns the signed clearance: positive inside, ~0 on the boundary,
/// negative outside (distance-like, in length units).
double convex_clearance(std::span<const Point2> hull, Point2 p);

struct CircleIntersection {
  std::vector<Point2> points;
  /// Polar angles of `points` as seen from the first circle's center.
  std::vector<Angle> angles_on_first;
  /// Set when the circles touch; this breaks general position.
  bool tangent = false;
};

CircleIntersection circle_circle_intersections(const Circle& c1, const Circle& c2, double eps = kDefaultEps);

/// Parameter range [t0, t1] of the part of segment ab inside the closed disk.
std::optional<std::pair<double, double>> clip_segment_to_disk(Point2 a, Point2 b, Point2 center, double radius);

/// Both intersections of the line through a, b with a circle, as line
/// parameters t (point = a + t (b - a)), ascending. Empty when disjoint.
std::vector<double> line_circle_parameters(Point2 a, Point2 b, Point2 center, double radius);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// True when segments ab and cd cross transversally at a point interior to
/// both (touching at endpoints or overlapping collinearly does not count).
bool segments_properly_cross(Point2 a, Point2 b, Point2 c, Point2 d, double eps = kDefaultEps);

/// Parameter of the orthogonal projection of p onto the line ab.
double project_parameter(Point2 p, Point2 a, Point2 b);

}  // namespace spider
