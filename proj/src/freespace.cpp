#include "spider/freespace.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "spider/parallel.h"

namespace spider {

Point2 segment_point(const SegEdge& e, const Scene& scene, double t) {
  return lerp(scene.footholds.at(e.i), scene.footholds.at(e.j), t);
}

Point2 edge_start(const BoundaryEdge& e, const Scene& scene) {
  if (auto* a = std::get_if<ArcEdge>(&e)) return Circle(scene.footholds.at(a->i), scene.R).point_at(a->interval.start.value());
  const auto& s = std::get<SegEdge>(e);
  return segment_point(s, scene, s.t0);
}

Point2 edge_end(const BoundaryEdge& e, const Scene& scene) {
  if (auto* a = std::get_if<ArcEdge>(&e)) return Circle(scene.footholds.at(a->i), scene.R).point_at(a->interval.lifted_end());
  const auto& s = std::get<SegEdge>(e);
  return segment_point(s, scene, s.t1);
}

Point2 edge_midpoint(const BoundaryEdge& e, const Scene& scene) {
  if (auto* a = std::get_if<ArcEdge>(&e))
    return Circle(scene.footholds.at(a->i), scene.R).point_at(a->interval.start.value() + 0.5 * a->interval.extent);
  const auto& s = std::get<SegEdge>(e);
  return segment_point(s, scene, 0.5 * (s.t0 + s.t1));
}

std::vector<HullFoothold> hull_vertex_footholds(const Scene& scene, const NeighborTable& table, double eps) {
  const auto& s = scene.footholds;
  std::vector<HullFoothold> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::vector<std::size_t> ids{k};
    for (const Neighbor& nb : table[k])
      if (nb.d <= scene.R) ids.push_back(nb.i);
    std::sort(ids.begin(), ids.end());
    std::vector<Point2> pts;
    for (std::size_t id : ids) pts.push_back(s[id]);
    auto hull = convex_hull_indices(pts, eps * scene.R);
    auto pos = std::find_if(hull.begin(), hull.end(), [&](std::size_t h) { return ids[h] == k; });
    if (pos == hull.end()) continue;
    HullFoothold hf;
    hf.index = k;
    auto label = [&](std::size_t a, std::size_t b) { return SegmentLabel{std::min(a, b), std::max(a, b)}; };
    if (hull.size() >= 2) {
      std::size_t at = static_cast<std::size_t>(pos - hull.begin());
      std::size_t prev = ids[hull[(at + hull.size() - 1) % hull.size()]];
      std::size_t next = ids[hull[(at + 1) % hull.size()]];
      hf.before = label(prev, k);
      hf.after = label(k, next);
    }
    out.push_back(hf);
  }
  return out;
}

StabilityVerdict contains(const Scene& scene, Point2 P, double eps) { return is_stable_point_footholds(P, scene, eps); }

namespace {

struct Vertex {
  double t;
  Point2 p;
};

void merge_collinear(std::vector<BoundaryEdge>& loop) {
  if (loop.size() < 2) return;
  auto joinable = [](const BoundaryEdge& a, const BoundaryEdge& b) {
    auto* x = std::get_if<SegEdge>(&a);
    auto* y = std::get_if<SegEdge>(&b);
    return x && y && x->i == y->i && x->j == y->j && (x->t1 - x->t0) * (y->t1 - y->t0) > 0.0;
  };
  std::vector<BoundaryEdge> out;
  for (const BoundaryEdge& e : loop) {
    if (!out.empty() && joinable(out.back(), e)) {
      std::get<SegEdge>(out.back()).t1 = std::get<SegEdge>(e).t1;
      continue;
    }
    out.push_back(e);
  }
  while (out.size() > 1 && joinable(out.back(), out.front())) {
    std::get<SegEdge>(out.back()).t1 = std::get<SegEdge>(out.front()).t1;
    out.erase(out.begin());
  }
  loop = std::move(out);
}

}  // namespace

FreeSpace compute_freespace(const Scene& scene, double eps) {
  check_scene(scene);
  if (scene.is_polygonal()) throw std::invalid_argument("compute requires a point-foothold scene");
  auto violations = validate_general_position(scene, eps);
  if (!violations.empty()) throw GeneralPositionError(std::move(violations));

  const auto& s = scene.footholds;
  const double R = scene.R;
  const double tol = eps * R;
  FreeSpace fs;
  NeighborTable table = build_neighbor_table(scene);
  fs.stats.arrangement = arrangement_stats(table);

  std::vector<CircleAnalysis> circles(s.size());
  parallel_for(s.size(), [&](std::size_t i0) { circles[i0] = analyze_circle(i0, scene, table, eps); });
  std::vector<LabeledArc> arcs;
  for (auto& c : circles) {
    arcs.insert(arcs.end(), c.arcs.begin(), c.arcs.end());
    for (auto& d : c.diagnostics) fs.diagnostics.push_back("circle " + std::to_string(c.i0) + ": " + d);
  }
  auto hulls = hull_vertex_footholds(scene, table, eps);

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Vertex>> lines;
  auto touch = [&](const ArcLabel& l, Point2 p) {
    if (auto* sl = std::get_if<SegmentLabel>(&l)) {
      double t = project_parameter(p, s[sl->i], s[sl->j]);
      lines[{sl->i, sl->j}].push_back({t, p});
    }
  };
  for (const LabeledArc& a : arcs) {
    if (a.arc.is_full()) continue;
    Circle c(s[a.i0], R);
    touch(a.start_label, c.point_at(a.arc.start.value()));
    touch(a.end_label, c.point_at(a.arc.lifted_end()));
  }
  for (const HullFoothold& h : hulls)
    for (const auto& l : {h.before, h.after})
      if (l) lines[{l->i, l->j}].push_back({h.index == l->i ? 0.0 : 1.0, s[h.index]});

  std::vector<BoundaryEdge> edges;
  for (auto& [key, verts] : lines) {
    auto [i, j] = key;
    std::sort(verts.begin(), verts.end(), [](const Vertex& a, const Vertex& b) { return a.t < b.t; });
    std::vector<Vertex> uniq;
    double len = distance(s[i], s[j]);
    for (const Vertex& v : verts)
      if (uniq.empty() || (v.t - uniq.back().t) * len > tol) uniq.push_back(v);
    Point2 dir = (s[j] - s[i]) * (1.0 / len);
    for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
      const Vertex& a = uniq[k];
      const Vertex& b = uniq[k + 1];
      Point2 mid = lerp(a.p, b.p, 0.5);
      StabilityVerdict v = is_stable_point_footholds(mid, scene, eps);
      if (!v.stable || !v.marginal) continue;
      int left = 0, right = 0;
      for (Point2 r : reachable_footholds(mid, scene, eps)) {
        double side = cross(dir, r - s[i]);
        if (side > tol) ++left;
        else if (side < -tol) ++right;
      }
      SegEdge e{i, j, a.t, b.t};
      if (left == 0 && right == 0) {
        fs.isolated_segments.push_back(e);
      } else if (left > 0 && right > 0) {
        fs.diagnostics.push_back("segment (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") gap marginal with footholds on both sides");
      } else {
        if (right > 0) std::swap(e.t0, e.t1);
        edges.push_back(e);
      }
    }
  }
  // Merge consecutive pieces of the same dangling segment.
  std::vector<SegEdge> dangling;
  for (const SegEdge& e : fs.isolated_segments) {
    if (!dangling.empty() && dangling.back().i == e.i && dangling.back().j == e.j &&
        std::abs(dangling.back().t1 - e.t0) * distance(s[e.i], s[e.j]) <= tol) {
      dangling.back().t1 = e.t1;
      continue;
    }
    dangling.push_back(e);
  }
  fs.isolated_segments = std::move(dangling);

  std::vector<Point2> degenerate;
  for (const LabeledArc& a : arcs) {
    if (a.degenerate()) {
      degenerate.push_back(Circle(s[a.i0], R).point_at(a.arc.start.value()));
      continue;
    }
    if (a.arc.is_full()) {
      fs.loops.push_back({ArcEdge{a.i0, a.arc}});
      continue;
    }
    edges.push_back(ArcEdge{a.i0, a.arc});
  }

  // Link edges into loops by endpoint proximity.
  const double match = 1e-7 * R;
  std::vector<Point2> starts, ends;
  for (const auto& e : edges) {
    starts.push_back(edge_start(e, scene));
    ends.push_back(edge_end(e, scene));
  }
  std::vector<bool> used(edges.size(), false);
  for (std::size_t first = 0; first < edges.size(); ++first) {
    if (used[first]) continue;
    std::vector<BoundaryEdge> loop{edges[first]};
    used[first] = true;
    std::size_t cur = first;
    for (;;) {
      Point2 at = ends[cur];
      if (distance(at, starts[first]) <= match) break;
      std::size_t best = edges.size();
      double best_d = match;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if (used[k]) continue;
        double d = distance(at, starts[k]);
        if (d <= best_d) {
          best_d = d;
          best = k;
        }
      }
      if (best == edges.size()) {
        std::ostringstream os;
        os.precision(17);
        os << "unmatched boundary endpoint at (" << at.x << ", " << at.y << ")";
        for (const auto& d : fs.diagnostics) os << "\n  " << d;
        throw std::runtime_error(os.str());
      }
      used[best] = true;
      loop.push_back(edges[best]);
      cur = best;
    }
    merge_collinear(loop);
    fs.loops.push_back(std::move(loop));
  }

  auto on_boundary = [&](Point2 p) {
    for (const auto& loop : fs.loops)
      for (const auto& e : loop) {
        if (auto* sg = std::get_if<SegEdge>(&e)) {
          if (point_segment_distance(p, segment_point(*sg, scene, sg->t0), segment_point(*sg, scene, sg->t1)) <= match)
            return true;
        } else {
          const auto& a = std::get<ArcEdge>(e);
          Point2 c = s[a.i];
          if (std::abs(distance(p, c) - R) <= match && a.interval.contains(Angle(polar_angle(p - c)), 1e-9)) return true;
        }
      }
    for (const SegEdge& sg : fs.isolated_segments)
      if (point_segment_distance(p, segment_point(sg, scene, sg.t0), segment_point(sg, scene, sg.t1)) <= match)
        return true;
    for (Point2 q : fs.isolated_points)
      if (distance(p, q) <= match) return true;
    return false;
  };
  for (const HullFoothold& h : hulls)
    if (!h.before && !on_boundary(s[h.index])) fs.isolated_points.push_back(s[h.index]);
  for (Point2 p : degenerate)
    if (!on_boundary(p)) fs.isolated_points.push_back(p);

  for (const auto& loop : fs.loops)
    for (const auto& e : loop) ++(std::holds_alternative<ArcEdge>(e) ? fs.stats.arcs : fs.stats.segments);
  fs.stats.segments += fs.isolated_segments.size();
  fs.stats.edge_count = fs.stats.arcs + fs.stats.segments;
  return fs;
}

namespace {

// A generic direction so rays avoid axis-aligned coincidences.
const Point2 kRay = unit_vector(0.7253981633974483);

int crossings(const BoundaryEdge& e, const Scene& scene, Point2 P) {
  if (auto* sg = std::get_if<SegEdge>(&e)) {
    Point2 a = segment_point(*sg, scene, sg->t0);
    Point2 b = segment_point(*sg, scene, sg->t1);
    Point2 v = b - a;
    double den = cross(kRay, v);
    if (den == 0.0) return 0;
    double along = cross(a - P, v) / den;   // ray parameter
    double on = cross(a - P, kRay) / den;  // segment parameter
    return (along > 0.0 && on >= 0.0 && on < 1.0) ? 1 : 0;
  }
  const auto& arc = std::get<ArcEdge>(e);
  Point2 c = scene.footholds.at(arc.i);
  int count = 0;
  for (double t : line_circle_parameters(P, P + kRay, c, scene.R)) {
    if (t <= 0.0) continue;
    Point2 q = P + t * kRay;
    double off = arc.interval.offset_of(Angle(polar_angle(q - c)));
    if (arc.interval.is_full() || off < arc.interval.extent) ++count;
  }
  return count;
}

double edge_distance(const BoundaryEdge& e, const Scene& scene, Point2 P) {
  if (auto* sg = std::get_if<SegEdge>(&e))
    return point_segment_distance(P, segment_point(*sg, scene, sg->t0), segment_point(*sg, scene, sg->t1));
  const auto& arc = std::get<ArcEdge>(e);
  Point2 c = scene.footholds.at(arc.i);
  if (P != c && arc.interval.contains(Angle(polar_angle(P - c)))) return std::abs(distance(P, c) - scene.R);
  return std::min(distance(P, edge_start(e, scene)), distance(P, edge_end(e, scene)));
}

}  // namespace

bool boundary_contains(const FreeSpace& fs, const Scene& scene, Point2 P, double tol) {
  for (Point2 q : fs.isolated_points)
    if (distance(P, q) <= tol) return true;
  for (const SegEdge& sg : fs.isolated_segments)
    if (point_segment_distance(P, segment_point(sg, scene, sg.t0), segment_point(sg, scene, sg.t1)) <= tol) return true;
  int count = 0;
  for (const auto& loop : fs.loops)
    for (const auto& e : loop) {
      if (edge_distance(e, scene, P) <= tol) return true;
      count += crossings(e, scene, P);
    }
  return count % 2 == 1;
}

double boundary_distance(const FreeSpace& fs, const Scene& scene, Point2 P) {
  double best = std::numeric_limits<double>::infinity();
  for (Point2 q : fs.isolated_points) best = std::min(best, distance(P, q));
  for (const SegEdge& sg : fs.isolated_segments)
    best = std::min(best, point_segment_distance(P, segment_point(sg, scene, sg.t0), segment_point(sg, scene, sg.t1)));
  for (const auto& loop : fs.loops)
    for (const auto& e : loop) best = std::min(best, edge_distance(e, scene, P));
  return best;
}

}  // namespace spider
