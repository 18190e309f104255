#include "spider/arrangement.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spider {

NeighborTable build_neighbor_table(const Scene& scene) {
  const auto& s = scene.footholds;
  double R = scene.R;
  NeighborTable table;
  table.rows.resize(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (a == b) continue;
      double d = distance(s[a], s[b]);
      if (!(d > 0.0) || !(d < 2.0 * R)) continue;
      Neighbor nb;
      nb.i = b;
      nb.d = d;
      nb.beta = polar_angle(s[b] - s[a]);
      double half = std::acos(std::clamp(d / (2.0 * R), -1.0, 1.0));
      nb.theta1 = Angle(nb.beta - half);
      nb.theta3 = Angle(nb.beta + half);
      table.rows[a].push_back(nb);
    }
  }
  return table;
}

ArrangementStats arrangement_stats(const NeighborTable& table) {
  ArrangementStats st;
  st.n = table.size();
  std::size_t incidences = 0;
  for (const auto& row : table.rows) {
    incidences += row.size();
    st.edge_count += std::max<std::size_t>(1, 2 * row.size());
  }
  st.intersecting_pairs = incidences / 2;
  st.vertex_count = 2 * st.intersecting_pairs;
  return st;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateFoothold: return "duplicate footholds";
    case ViolationKind::DistanceR: return "distance R";
    case ViolationKind::Distance2R: return "distance 2R";
    case ViolationKind::TriplePoint: return "triple point";
    case ViolationKind::TwoCirclesSegment: return "two circles and a segment";
    case ViolationKind::CircleTwoSegments: return "circle and two segments";
  }
  return "unknown";
}

namespace {

std::string describe(ViolationKind kind, const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << to_string(kind) << " (";
  for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? ", " : "") << idx[k];
  os << ")";
  return os.str();
}

void add(std::vector<Violation>& out, ViolationKind kind, std::vector<std::size_t> idx) {
  std::string msg = describe(kind, idx);
  out.push_back({kind, std::move(idx), std::move(msg)});
}

}  // namespace

std::vector<Violation> validate_general_position(const Scene& scene, double eps) {
  const auto& s = scene.footholds;
  const double R = scene.R;
  const double tol = eps * R;
  const std::size_t n = s.size();
  std::vector<Violation> out;

  struct Seg {
    std::size_t a, b;
  };
  std::vector<Seg> segments;
  std::vector<std::vector<std::size_t>> close(n);  // within 2R
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double d = distance(s[a], s[b]);
      if (d <= tol) add(out, ViolationKind::DuplicateFoothold, {a, b});
      else if (std::abs(d - R) <= tol) add(out, ViolationKind::DistanceR, {a, b});
      else if (std::abs(d - 2.0 * R) <= tol) add(out, ViolationKind::Distance2R, {a, b});
      if (d <= 2.0 * R + tol) {
        segments.push_back({a, b});
        close[a].push_back(b);
        close[b].push_back(a);
      }
    }
  }

  auto on_segment = [&](Point2 x, std::size_t a, std::size_t b) { return point_segment_distance(x, s[a], s[b]) <= tol; };

  // Circle-circle vertices: a third circle or a segment through one of them.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b : close[a]) {
      if (b <= a) continue;
      double d = distance(s[a], s[b]);
      if (d <= tol || d >= 2.0 * R - tol) continue;
      auto hit = circle_circle_intersections(Circle(s[a], R), Circle(s[b], R), tol);
      for (Point2 x : hit.points) {
        for (std::size_t c : close[a]) {
          if (c <= b || c == a) continue;
          if (std::abs(distance(x, s[c]) - R) <= tol) add(out, ViolationKind::TriplePoint, {a, b, c});
        }
        for (std::size_t p = 0; p < n; ++p) {
          if (distance(x, s[p]) > R + tol) continue;
          for (std::size_t q : close[p]) {
            if (q <= p && distance(x, s[q]) <= R + tol) continue;  // counted from q
            if (on_segment(x, p, q)) {
              std::size_t lo = std::min(p, q), hi = std::max(p, q);
              add(out, ViolationKind::TwoCirclesSegment, {a, b, lo, hi});
            }
          }
        }
      }
    }
  }

  // Crossing points of two segments lying on a circle.
  for (std::size_t x = 0; x < segments.size(); ++x) {
    for (std::size_t y = x + 1; y < segments.size(); ++y) {
      const Seg& e = segments[x];
      const Seg& f = segments[y];
      if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
      Point2 p = s[e.a], r = s[e.b] - s[e.a];
      Point2 q = s[f.a], w = s[f.b] - s[f.a];
      double den = cross(r, w);
      if (std::abs(den) <= tol * std::max(norm(r), norm(w))) continue;
      double t = cross(q - p, w) / den;
      double u = cross(q - p, r) / den;
      if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) continue;
      Point2 c = p + t * r;
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(distance(c, s[k]) - R) <= tol) add(out, ViolationKind::CircleTwoSegments, {k, e.a, e.b, f.a, f.b});
    }
  }
  return out;
}

GeneralPositionError::GeneralPositionError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string msg = "general-position violation";
        for (std::size_t k = 0; k < violations.size() && k < 8; ++k) msg += (k ? "; " : ": ") + violations[k].message;
        if (violations.size() > 8) msg += "; ...";
        return msg;
      }()),
      violations_(std::move(violations)) {}

}  // namespace spider
