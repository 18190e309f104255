#include "spider/polygonal.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spider/parallel.h"

namespace spider {

std::vector<Wall> scene_walls(const Scene& scene) {
  std::vector<Wall> walls;
  for (std::size_t k = 0; k < scene.polygons.size(); ++k) {
    const Polygon& poly = scene.polygons[k];
    if (poly.size() == 2) {
      if (poly[0] != poly[1]) walls.push_back({poly[0], poly[1], k});
      continue;
    }
    if (poly.size() < 3) continue;
    for (std::size_t e = 0; e < poly.size(); ++e) {
      Point2 a = poly[e], b = poly[(e + 1) % poly.size()];
      if (a != b) walls.push_back({a, b, k});
    }
  }
  return walls;
}

std::vector<Corner> scene_corners(const Scene& scene, const std::vector<Wall>& walls, double eps) {
  double tol = eps * scene.R;
  std::vector<Corner> corners;
  auto find_or_add = [&](Point2 p) -> Corner& {
    for (Corner& c : corners)
      if (distance(c.p, p) <= tol) return c;
    corners.push_back({p, {}});
    return corners.back();
  };
  for (const Polygon& poly : scene.polygons)
    for (Point2 p : poly) find_or_add(p);
  for (std::size_t w = 0; w < walls.size(); ++w) {
    find_or_add(walls[w].a).walls.push_back(w);
    find_or_add(walls[w].b).walls.push_back(w);
  }
  return corners;
}

std::vector<Point2> reachable_hull(Point2 P, std::span<const Wall> walls, double R) {
  std::vector<Point2> pts;
  for (const Wall& w : walls) {
    auto clip = clip_segment_to_disk(w.a, w.b, P, R);
    if (!clip) continue;
    pts.push_back(lerp(w.a, w.b, clip->first));
    pts.push_back(lerp(w.a, w.b, clip->second));
  }
  if (pts.empty()) return {};
  return convex_hull(pts, kDefaultEps * R);
}

std::vector<Point2> reachable_hull(Point2 P, const Scene& scene) {
  auto walls = scene_walls(scene);
  std::vector<Point2> pts = reachable_hull(P, walls, scene.R);
  for (const Polygon& poly : scene.polygons)
    if (poly.size() == 1 && distance(poly[0], P) <= scene.R) pts.push_back(poly[0]);
  if (pts.empty()) return {};
  return convex_hull(pts, kDefaultEps * scene.R);
}

namespace {

StabilityVerdict verdict_from_hull(Point2 P, const std::vector<Point2>& hull, double R, double eps) {
  StabilityVerdict v;
  if (hull.empty()) return v;
  double tol = eps * R;
  double clearance = convex_clearance(hull, P);
  v.stable = clearance >= -tol;
  v.marginal = v.stable && (hull.size() < 3 || clearance <= tol);
  std::vector<Point2> dirs;
  for (Point2 h : hull)
    if (distance(h, P) > tol) dirs.push_back(h);
  v.gap = max_angular_gap(P, dirs);
  return v;
}

}  // namespace

StabilityVerdict is_stable_segments(Point2 P, std::span<const Wall> walls, double R, double eps) {
  return verdict_from_hull(P, reachable_hull(P, walls, R), R, eps);
}

StabilityVerdict is_stable_polygonal(Point2 P, const Scene& scene, double eps) {
  return verdict_from_hull(P, reachable_hull(P, scene), scene.R, eps);
}

bool point_in_polygon(const Polygon& poly, Point2 p) {
  if (poly.size() < 3) return false;
  bool inside = false;
  for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++) {
    Point2 pa = poly[a], pb = poly[b];
    if ((pa.y > p.y) != (pb.y > p.y)) {
      double x = pa.x + (p.y - pa.y) * (pb.x - pa.x) / (pb.y - pa.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

OccupancyGrid sample_freespace_polygonal(const Scene& scene, const BBox& bbox, int nx, int ny, double eps) {
  auto walls = scene_walls(scene);
  return sample_grid(bbox, nx, ny, [&](Point2 p) {
    for (const Polygon& poly : scene.polygons)
      if (point_in_polygon(poly, p)) return true;
    auto hull = reachable_hull(p, walls, scene.R);
    for (const Polygon& poly : scene.polygons)
      if (poly.size() == 1 && distance(poly[0], p) <= scene.R) hull.push_back(poly[0]);
    if (hull.size() > 2) hull = convex_hull(hull, eps * scene.R);
    return verdict_from_hull(p, hull, scene.R, eps).stable;
  });
}

const char* to_string(ContactKind kind) {
  switch (kind) {
    case ContactKind::CircularArc: return "circular_arc";
    case ContactKind::EllipseArc: return "ellipse_arc";
    case ContactKind::ConchoidArc: return "conchoid_arc";
    case ContactKind::Segment: return "segment";
  }
  return "unknown";
}

namespace {

// Wall parameters (s, t) of the ellipse placement with ladder angle theta,
// from end_a = w1(s), end_b = w2(t), end_b - end_a = 2R e(theta).
std::pair<double, double> ellipse_params(const Wall& w1, const Wall& w2, double R, double theta) {
  Point2 v1 = w1.b - w1.a, v2 = w2.b - w2.a;
  Point2 rhs = 2.0 * R * unit_vector(theta) - (w2.a - w1.a);
  Point2 mv1 = Point2{0.0, 0.0} - v1;
  double den = cross(mv1, v2);
  return {cross(rhs, v2) / den, cross(mv1, rhs) / den};
}

}  // namespace

LadderPlacement ContactCurve::at(double t) const {
  LadderPlacement L;
  switch (kind) {
    case ContactKind::CircularArc: {
      Point2 e = unit_vector(t);
      L.end_a = c1;
      L.end_b = c1 + 2.0 * R * e;
      L.midpoint = c1 + R * e;
      L.contact_a = L.contact_b = c1;
      break;
    }
    case ContactKind::EllipseArc: {
      auto [s, u] = ellipse_params(w1, w2, R, t);
      L.end_a = lerp(w1.a, w1.b, s);
      L.end_b = lerp(w2.a, w2.b, u);
      L.midpoint = lerp(L.end_a, L.end_b, 0.5);
      L.contact_a = L.end_a;
      L.contact_b = L.end_b;
      break;
    }
    case ContactKind::ConchoidArc: {
      Point2 M = lerp(w1.a, w1.b, t);
      Point2 d = c1 - M;
      Point2 e = d * (1.0 / norm(d));
      L.end_a = M;
      L.end_b = M + 2.0 * R * e;
      L.midpoint = M + R * e;
      L.contact_a = M;
      L.contact_b = c1;
      break;
    }
    case ContactKind::Segment: {
      Point2 d = c2 - c1;
      Point2 e = d * (1.0 / norm(d));
      L.midpoint = c1 + t * e;
      L.end_a = L.midpoint - R * e;
      L.end_b = L.midpoint + R * e;
      L.contact_a = c1;
      L.contact_b = c2;
      break;
    }
  }
  return L;
}

bool ContactCurve::is_relevant(double t) const {
  for (auto [lo, hi] : relevant)
    if (t >= lo && t <= hi) return true;
  return false;
}

bool ladder_is_free(Point2 a, Point2 b, const Scene& scene, std::span<const Wall> walls, double eps) {
  double tol = eps * scene.R;
  std::vector<double> cuts{0.0, 1.0};
  Point2 v = b - a;
  for (const Wall& w : walls) {
    if (segments_properly_cross(a, b, w.a, w.b, tol)) return false;
    Point2 q = w.b - w.a;
    double den = cross(v, q);
    if (den == 0.0) continue;
    double t = cross(w.a - a, q) / den;
    double u = cross(w.a - a, v) / den;
    if (t > 0.0 && t < 1.0 && u >= -1e-12 && u <= 1.0 + 1e-12) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] - cuts[k] <= 1e-12) continue;
    Point2 m = lerp(a, b, 0.5 * (cuts[k] + cuts[k + 1]));
    for (const Polygon& poly : scene.polygons) {
      if (!point_in_polygon(poly, m)) continue;
      double clearance = std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < poly.size(); ++e)
        clearance = std::min(clearance, point_segment_distance(m, poly[e], poly[(e + 1) % poly.size()]));
      if (clearance > tol) return false;
    }
  }
  return true;
}

namespace {

using Intervals = std::vector<std::pair<double, double>>;

Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  for (auto [a0, a1] : a)
    for (auto [b0, b1] : b) {
      double lo = std::max(a0, b0), hi = std::min(a1, b1);
      if (hi > lo) out.emplace_back(lo, hi);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Parameter sub-intervals of [t0, t1] where the ladder is free: 256 samples,
// then bisection on each transition.
Intervals free_intervals(const ContactCurve& c, const Scene& scene, std::span<const Wall> walls, double eps) {
  constexpr int kSamples = 256;
  auto free_at = [&](double t) {
    LadderPlacement L = c.at(t);
    return ladder_is_free(L.end_a, L.end_b, scene, walls, eps);
  };
  auto param = [&](int k) { return c.t0 + (c.t1 - c.t0) * k / kSamples; };
  auto refine = [&](double lo, double hi, bool lo_free) {
    for (int it = 0; it < 50 && hi - lo > 1e-13; ++it) {
      double m = 0.5 * (lo + hi);
      if (free_at(m) == lo_free) lo = m;
      else hi = m;
    }
    return 0.5 * (lo + hi);
  };
  Intervals out;
  bool prev = free_at(c.t0);
  double start = c.t0;
  for (int k = 1; k <= kSamples; ++k) {
    double t = param(k);
    bool cur = free_at(t);
    if (cur != prev) {
      double edge = refine(param(k - 1), t, prev);
      if (prev) out.emplace_back(start, edge);
      else start = edge;
    }
    prev = cur;
  }
  if (prev) out.emplace_back(start, c.t1);
  return out;
}

// Solutions of A cos x + B sin x + C = 0 on [0, 2π).
std::vector<double> sinusoid_roots(double A, double B, double C) {
  double rho = std::hypot(A, B);
  if (rho == 0.0 || std::abs(C) > rho) return {};
  double base = std::atan2(B, A);
  double off = std::acos(std::clamp(-C / rho, -1.0, 1.0));
  return {canonical_angle(base - off), canonical_angle(base + off)};
}

// Components of {theta : 0 <= s, t <= 1} for the ellipse of two walls.
Intervals ellipse_domain(const Wall& w1, const Wall& w2, double R) {
  Point2 v1 = w1.b - w1.a, v2 = w2.b - w2.a;
  Point2 mv1 = Point2{0.0, 0.0} - v1;
  Point2 delta = w2.a - w1.a;
  double den = cross(mv1, v2);
  // s = (2R cross(e, v2) - cross(delta, v2)) / den, t = (2R cross(mv1, e) - cross(mv1, delta)) / den
  double sA = 2.0 * R * v2.y / den, sB = -2.0 * R * v2.x / den, sC = -cross(delta, v2) / den;
  double tA = -2.0 * R * mv1.y / den, tB = 2.0 * R * mv1.x / den, tC = -cross(mv1, delta) / den;
  std::vector<double> cuts;
  for (auto r : sinusoid_roots(sA, sB, sC)) cuts.push_back(r);
  for (auto r : sinusoid_roots(sA, sB, sC - 1.0)) cuts.push_back(r);
  for (auto r : sinusoid_roots(tA, tB, tC)) cuts.push_back(r);
  for (auto r : sinusoid_roots(tA, tB, tC - 1.0)) cuts.push_back(r);
  auto valid = [&](double th) {
    auto [s, t] = ellipse_params(w1, w2, R, th);
    return s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0;
  };
  Intervals out;
  if (cuts.empty()) {
    if (valid(0.0)) out.emplace_back(0.0, kTwoPi);
    return out;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    double lo = cuts[k];
    double hi = k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + kTwoPi;
    if (hi - lo > 1e-12 && valid(0.5 * (lo + hi))) {
      if (!out.empty() && std::abs(out.back().second - lo) <= 1e-12) out.back().second = hi;
      else out.emplace_back(lo, hi);
    }
  }
  // Join a component that runs through the seam.
  if (out.size() > 1 && std::abs(out.back().second - (out.front().first + kTwoPi)) <= 1e-12) {
    out.back().second = out.front().second + kTwoPi;
    out.erase(out.begin());
  }
  return out;
}

std::string describe(const ContactCurve& c) {
  std::ostringstream os;
  os << to_string(c.kind) << " corners[";
  for (std::size_t k = 0; k < c.corners.size(); ++k) os << (k ? "," : "") << c.corners[k];
  os << "] walls[";
  for (std::size_t k = 0; k < c.walls.size(); ++k) os << (k ? "," : "") << c.walls[k];
  os << "]";
  return os.str();
}

// Sampled near-degeneracy detection for H2 (4-contact placements), H3
// (conchoid end arcs tangent to a wall) and H4 (3-contact placements with the
// midpoint at a corner).
void check_hypotheses(const ContactCurve& c, std::span<const Wall> walls, std::span<const Corner> corners, double R,
                      double eps, std::vector<std::string>& warnings) {
  constexpr int kSamples = 64;
  double near = 1e3 * eps * R;
  bool h2 = false, h3 = false, h4 = false;
  for (int k = 0; k <= kSamples; ++k) {
    double t = c.t0 + (c.t1 - c.t0) * k / kSamples;
    LadderPlacement L = c.at(t);
    int extra = 0;
    for (std::size_t w = 0; w < walls.size(); ++w) {
      if (std::find(c.walls.begin(), c.walls.end(), w) != c.walls.end()) continue;
      bool incident = false;
      for (std::size_t ci : c.corners)
        incident = incident || distance(corners[ci].p, walls[w].a) <= near || distance(corners[ci].p, walls[w].b) <= near;
      if (incident) continue;
      double dist = std::min({point_segment_distance(walls[w].a, L.end_a, L.end_b),
                              point_segment_distance(walls[w].b, L.end_a, L.end_b),
                              point_segment_distance(L.end_a, walls[w].a, walls[w].b),
                              point_segment_distance(L.end_b, walls[w].a, walls[w].b)});
      if (dist <= near) ++extra;
      if (c.kind == ContactKind::ConchoidArc && point_segment_distance(L.end_b, walls[w].a, walls[w].b) <= near &&
          k > 0 && k < kSamples) {
        double dt = (c.t1 - c.t0) / kSamples * 1e-3;
        Point2 tangent = c.at(t + dt).end_b - c.at(t - dt).end_b;
        Point2 along = walls[w].b - walls[w].a;
        if (std::abs(cross(tangent, along)) <= 1e-6 * norm(tangent) * norm(along)) h3 = true;
      }
    }
    if (extra >= 2) h2 = true;
    if (extra >= 1)
      for (const Corner& cc : corners)
        if (distance(cc.p, L.midpoint) <= near) h4 = true;
  }
  if (h2) warnings.push_back("H2: possible 4-contact placement on " + describe(c));
  if (h3) warnings.push_back("H3: conchoid end arc tangent to a wall on " + describe(c));
  if (h4) warnings.push_back("H4: 3-contact placement with midpoint at a corner on " + describe(c));
}

}  // namespace

ContactTracings two_contact_tracings(const Scene& scene, double eps) {
  check_scene(scene);
  std::vector<std::string> h1;
  for (std::size_t k = 0; k < scene.polygons.size(); ++k) {
    const Polygon& poly = scene.polygons[k];
    double area2 = 0.0;
    for (std::size_t e = 0; e < poly.size(); ++e) area2 += cross(poly[e], poly[(e + 1) % poly.size()]);
    if (poly.size() < 3 || std::abs(area2) <= eps * scene.R * scene.R)
      h1.push_back("H1: polygon " + std::to_string(k) + " is degenerate (reduced to a segment or a point)");
  }
  if (!h1.empty()) throw HypothesisError("hypothesis H1 violated", h1);

  const double R = scene.R;
  const double tol = eps * R;
  auto walls = scene_walls(scene);
  auto corners = scene_corners(scene, walls, eps);
  ContactTracings out;
  std::vector<ContactCurve> raw;

  for (std::size_t c = 0; c < corners.size(); ++c) {
    ContactCurve k;
    k.kind = ContactKind::CircularArc;
    k.corners = {c};
    k.R = R;
    k.c1 = corners[c].p;
    k.t0 = 0.0;
    k.t1 = kTwoPi;
    raw.push_back(k);
  }
  for (std::size_t a = 0; a < walls.size(); ++a)
    for (std::size_t b = a + 1; b < walls.size(); ++b) {
      const Wall& w1 = walls[a];
      const Wall& w2 = walls[b];
      double gap = std::min({point_segment_distance(w1.a, w2.a, w2.b), point_segment_distance(w1.b, w2.a, w2.b),
                             point_segment_distance(w2.a, w1.a, w1.b), point_segment_distance(w2.b, w1.a, w1.b)});
      if (gap >= 2.0 * R) continue;
      Point2 v1 = w1.b - w1.a, v2 = w2.b - w2.a;
      if (std::abs(cross(v1, v2)) <= tol * norm(v1) * norm(v2) / R) {
        out.skipped.push_back("parallel walls " + std::to_string(a) + " and " + std::to_string(b));
        continue;
      }
      for (auto [lo, hi] : ellipse_domain(w1, w2, R)) {
        ContactCurve k;
        k.kind = ContactKind::EllipseArc;
        k.walls = {a, b};
        k.R = R;
        k.w1 = w1;
        k.w2 = w2;
        k.t0 = lo;
        k.t1 = hi;
        k.relevant = {{lo, hi}};
        raw.push_back(k);
      }
    }
  for (std::size_t c = 0; c < corners.size(); ++c)
    for (std::size_t w = 0; w < walls.size(); ++w) {
      Point2 p = corners[c].p;
      const Wall& wall = walls[w];
      // |p - M(s)|^2 = r^2 as a quadratic in s.
      auto roots = [&](double r) { return line_circle_parameters(wall.a, wall.b, p, r); };
      auto outer = roots(2.0 * R);
      if (outer.empty()) continue;
      double lo = std::max(0.0, outer[0]), hi = std::min(1.0, outer[1]);
      if (!(hi > lo)) continue;
      ContactCurve k;
      k.kind = ContactKind::ConchoidArc;
      k.corners = {c};
      k.walls = {w};
      k.R = R;
      k.c1 = p;
      k.w1 = wall;
      // Keep the corner off the ladder end.
      double s_at_corner = project_parameter(p, wall.a, wall.b);
      if (point_segment_distance(p, wall.a, wall.b) <= tol) {
        double step = 1e-9;
        if (std::abs(s_at_corner - lo) <= step) lo += step;
        if (std::abs(s_at_corner - hi) <= step) hi -= step;
      }
      k.t0 = lo;
      k.t1 = hi;
      auto inner = roots(R);
      if (inner.empty()) {
        k.relevant = {{lo, hi}};
      } else {
        k.relevant = intersect({{lo, hi}}, {{lo, inner[0]}, {inner[1], hi}});
      }
      raw.push_back(k);
    }
  for (std::size_t a = 0; a < corners.size(); ++a)
    for (std::size_t b = a + 1; b < corners.size(); ++b) {
      double d = distance(corners[a].p, corners[b].p);
      if (d >= 2.0 * R || d <= tol) continue;
      ContactCurve k;
      k.kind = ContactKind::Segment;
      k.corners = {a, b};
      k.R = R;
      k.c1 = corners[a].p;
      k.c2 = corners[b].p;
      k.t0 = d - R;
      k.t1 = R;
      k.relevant = {{std::max(0.0, d - R), std::min(d, R)}};
      raw.push_back(k);
    }

  parallel_for(raw.size(), [&](std::size_t k) {
    ContactCurve& c = raw[k];
    if (c.relevant.empty()) return;
    c.relevant = intersect(c.relevant, free_intervals(c, scene, walls, eps));
  });
  std::vector<std::vector<std::string>> warnings(raw.size());
  parallel_for(raw.size(), [&](std::size_t k) { check_hypotheses(raw[k], walls, corners, R, eps, warnings[k]); });
  for (auto& w : warnings) out.hypothesis_warnings.insert(out.hypothesis_warnings.end(), w.begin(), w.end());
  out.curves = std::move(raw);
  return out;
}

}  // namespace spider
