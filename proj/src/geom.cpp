#include "spider/geom.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace spider {

double canonical_angle(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π.
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double lift_near(double radians, double center) {
  double r = canonical_angle(radians - (center - kPi));
  return r + (center - kPi);
}

double angular_difference(Angle a, Angle b) {
  double d = canonical_angle(b.value() - a.value());
  return d > kPi ? d - kTwoPi : d;
}

AngleInterval::AngleInterval(Angle s, double e) : start(s), extent(e) {
  if (!(extent >= 0.0)) throw std::invalid_argument("angle interval extent must be non-negative");
  if (extent > kTwoPi) extent = kTwoPi;
}

bool AngleInterval::contains(Angle a, double eps) const {
  if (is_full()) return true;
  double off = offset_of(a);
  return off <= extent + eps || off >= kTwoPi - eps;
}

std::vector<std::pair<double, double>> AngleInterval::lifted_ranges() const {
  double s = start.value();
  if (is_full()) {
    if (s == 0.0) return {{0.0, kTwoPi}};
    return {{s, kTwoPi}, {0.0, s}};
  }
  double e = s + extent;
  if (e <= kTwoPi) return {{s, e}};
  return {{s, kTwoPi}, {0.0, e - kTwoPi}};
}

Circle::Circle(Point2 c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw std::invalid_argument("circle radius must be positive");
}

Sign orient(Point2 a, Point2 b, Point2 c, double eps) {
  Point2 ab = b - a;
  Point2 ac = c - a;
  double area2 = cross(ab, ac);
  double scale = std::max(norm(ab), norm(ac));
  if (std::abs(area2) <= eps * scale) return Sign::Zero;
  return area2 > 0.0 ? Sign::Positive : Sign::Negative;
}

std::vector<std::size_t> convex_hull_indices(std::span<const Point2> points, double eps) {
  if (points.empty()) throw std::invalid_argument("empty point set");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (points[i].x != points[j].x) return points[i].x < points[j].x;
    if (points[i].y != points[j].y) return points[i].y < points[j].y;
    return i < j;
  });

  std::vector<std::size_t> unique;
  for (std::size_t idx : order) {
    if (!unique.empty() && distance(points[unique.back()], points[idx]) <= eps) continue;
    unique.push_back(idx);
  }
  if (unique.size() == 1) return unique;

  // Andrew's monotone chain; Zero turns are popped so flat vertices vanish.
  std::vector<std::size_t> hull(2 * unique.size());
  std::size_t k = 0;
  auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    return orient(points[o], points[a], points[b], eps);
  };
  for (std::size_t idx : unique) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], idx) != Sign::Positive) --k;
    hull[k++] = idx;
  }
  for (std::size_t m = unique.size() - 1, lower = k + 1; m-- > 0;) {
    std::size_t idx = unique[m];
    while (k >= lower && turn(hull[k - 2], hull[k - 1], idx) != Sign::Positive) --k;
    hull[k++] = idx;
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);

  // Start at the lowest, then leftmost vertex.
  auto first = std::min_element(hull.begin(), hull.end(), [&](std::size_t i, std::size_t j) {
    if (points[i].y != points[j].y) return points[i].y < points[j].y;
    return points[i].x < points[j].x;
  });
  std::rotate(hull.begin(), first, hull.end());
  return hull;
}

std::vector<Point2> convex_hull(std::span<const Point2> points, double eps) {
  std::vector<Point2> out;
  for (std::size_t idx : convex_hull_indices(points, eps)) out.push_back(points[idx]);
  return out;
}

double convex_clearance(std::span<const Point2> hull, Point2 p) {
  if (hull.empty()) return -std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return -distance(hull[0], p);
  if (hull.size() == 2) return -point_segment_distance(p, hull[0], hull[1]);
  double clearance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < hull.size(); ++k) {
    Point2 a = hull[k];
    Point2 b = hull[(k + 1) % hull.size()];
    double len = distance(a, b);
    if (len == 0.0) continue;
    clearance = std::min(clearance, cross(b - a, p - a) / len);
  }
  return clearance;
}

CircleIntersection circle_circle_intersections(const Circle& c1, const Circle& c2, double eps) {
  Point2 delta = c2.center - c1.center;
  double d = norm(delta);
  if (d <= eps && std::abs(c1.radius - c2.radius) <= eps) throw std::invalid_argument("coincident circles");

  CircleIntersection out;
  double r1 = c1.radius;
  double r2 = c2.radius;
  if (d > r1 + r2 + eps || d < std::abs(r1 - r2) - eps || d <= eps) return out;

  double base = polar_angle(delta);
  if (std::abs(d - (r1 + r2)) <= eps || std::abs(d - std::abs(r1 - r2)) <= eps) {
    // Touching: a single point on the center line. Only an internal tangency
    // with the first circle inside the second puts it behind c1.
    bool internal = std::abs(d - (r1 + r2)) > eps;
    double dir = (internal && r2 > r1) ? base + kPi : base;
    out.points.push_back(c1.point_at(dir));
    out.angles_on_first.emplace_back(dir);
    out.tangent = true;
    return out;
  }

  double cos_half = (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1);
  cos_half = std::clamp(cos_half, -1.0, 1.0);
  double half = std::acos(cos_half);
  for (double a : {base - half, base + half}) {
    out.points.push_back(c1.point_at(a));
    out.angles_on_first.emplace_back(a);
  }
  return out;
}

std::vector<double> line_circle_parameters(Point2 a, Point2 b, Point2 center, double radius) {
  Point2 v = b - a;
  Point2 w = a - center;
  double qa = dot(v, v);
  if (qa == 0.0) return {};
  double qb = dot(v, w);
  double qc = dot(w, w) - radius * radius;
  double disc = qb * qb - qa * qc;
  if (disc < 0.0) return {};
  double root = std::sqrt(disc);
  // Numerically stable quadratic roots.
  double q = qb >= 0.0 ? -(qb + root) : -(qb - root);
  double t1 = q / qa;
  double t2 = q != 0.0 ? qc / q : t1;
  if (t1 > t2) std::swap(t1, t2);
  return {t1, t2};
}

std::optional<std::pair<double, double>> clip_segment_to_disk(Point2 a, Point2 b, Point2 center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (a == b) {
    if (distance(a, center) <= radius) return std::make_pair(0.0, 1.0);
    return std::nullopt;
  }
  auto ts = line_circle_parameters(a, b, center, radius);
  if (ts.empty()) return std::nullopt;
  double t0 = std::max(0.0, ts[0]);
  double t1 = std::min(1.0, ts[1]);
  if (t0 > t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

double project_parameter(Point2 p, Point2 a, Point2 b) {
  Point2 v = b - a;
  double len2 = norm2(v);
  if (len2 == 0.0) return 0.0;
  return dot(p - a, v) / len2;
}

bool segments_properly_cross(Point2 a, Point2 b, Point2 c, Point2 d, double eps) {
  Sign o1 = orient(a, b, c, eps);
  Sign o2 = orient(a, b, d, eps);
  Sign o3 = orient(c, d, a, eps);
  Sign o4 = orient(c, d, b, eps);
  if (o1 == Sign::Zero || o2 == Sign::Zero || o3 == Sign::Zero || o4 == Sign::Zero) return false;
  return o1 != o2 && o3 != o4;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  double t = std::clamp(project_parameter(p, a, b), 0.0, 1.0);
  return distance(p, lerp(a, b, t));
}

}  // namespace spider
