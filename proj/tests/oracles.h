#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance suite. Nothing here calls into the envelope or freespace code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "spider/envelope.h"
#include "spider/geom.h"
#include "spider/polygonal.h"
#include "spider/torus.h"

namespace oracle {

using spider::Point2;

// Pointwise extremum of the pieces defined at lifted u, or NaN.
inline double naive_extremum(std::span<const spider::TorusPiece* const> pieces, double u, bool upper) {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (const auto* p : pieces) {
    bool inside = false;
    for (auto [lo, hi] : p->u_interval.lifted_ranges())
      if (u >= lo && u <= hi) inside = true;
    if (!inside) continue;
    double v = p->theta(u);
    if (std::isnan(best) || (upper ? v > best : v < best)) best = v;
  }
  return best;
}

// Overlap of the lifted ranges of two pieces, as (lo, hi) pairs.
inline std::vector<std::pair<double, double>> common_ranges(const spider::TorusPiece& a,
                                                            const spider::TorusPiece& b) {
  std::vector<std::pair<double, double>> out;
  for (auto ra : a.u_interval.lifted_ranges())
    for (auto rb : b.u_interval.lifted_ranges()) {
      double lo = std::max(ra.first, rb.first), hi = std::min(ra.second, rb.second);
      if (hi > lo) out.push_back({lo, hi});
    }
  return out;
}

// Sign changes of a(u) - b(u) over `samples` interior points of [lo, hi].
// Differences within `flat` of zero are skipped (tangency or shared ends).
inline int sign_changes(const spider::TorusPiece& a, const spider::TorusPiece& b, double lo, double hi,
                        int samples, double flat = 1e-12) {
  int changes = 0, last = 0;
  for (int k = 1; k <= samples; ++k) {
    double u = lo + (hi - lo) * k / (samples + 1);
    double d = a.theta(u) - b.theta(u);
    if (std::abs(d) <= flat) continue;
    int s = d > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Half-disk emptiness sweep for segment footholds: P is stable iff no
// direction θ leaves the open half-disk of radius R on the θ side free of
// foothold points. Each wall is clipped to disk(P, R) and tested against
// the half-plane exactly; the sweep runs over `steps` orientations.
// Returns the smallest margin by which a half-disk was found empty (<= 0
// means none was), useful to exclude near-marginal queries.
struct HalfDiskResult {
  bool stable = true;
  // Minimum over orientations of the largest signed projection of the
  // reachable set onto the orientation; negative for an empty half-disk.
  double best = std::numeric_limits<double>::infinity();
};

inline HalfDiskResult half_disk_sweep(Point2 P, std::span<const spider::Wall> walls, double R, int steps) {
  std::vector<std::pair<Point2, Point2>> clipped;
  for (const auto& w : walls) {
    auto c = spider::clip_segment_to_disk(w.a, w.b, P, R);
    if (!c) continue;
    clipped.push_back({spider::lerp(w.a, w.b, c->first), spider::lerp(w.a, w.b, c->second)});
  }
  HalfDiskResult r;
  if (clipped.empty()) {
    r.stable = false;
    r.best = -R;
    return r;
  }
  for (int k = 0; k < steps; ++k) {
    Point2 n = spider::unit_vector(k * spider::kTwoPi / steps);
    double top = -std::numeric_limits<double>::infinity();
    for (auto [a, b] : clipped) top = std::max({top, spider::dot(a - P, n), spider::dot(b - P, n)});
    r.best = std::min(r.best, top);
  }
  r.stable = r.best >= 0.0;
  return r;
}

// Largest angular gap, seen from P, between the direction arcs subtended by
// the walls clipped to disk(P, R). 0 when P lies on a wall, 2π when nothing
// is reachable.
inline double segment_direction_gap(Point2 P, std::span<const spider::Wall> walls, double R) {
  std::vector<std::pair<double, double>> arcs;  // [start, start + extent]
  for (const auto& w : walls) {
    auto c = spider::clip_segment_to_disk(w.a, w.b, P, R);
    if (!c) continue;
    Point2 a = spider::lerp(w.a, w.b, c->first), b = spider::lerp(w.a, w.b, c->second);
    if (spider::point_segment_distance(P, a, b) <= 1e-12) return 0.0;
    double ta = spider::canonical_angle(spider::polar_angle(a - P));
    double tb = spider::canonical_angle(spider::polar_angle(b - P));
    double ext = spider::canonical_angle(tb - ta);
    if (ext > spider::kPi) {
      std::swap(ta, tb);
      ext = spider::kTwoPi - ext;
    }
    arcs.push_back({ta, ext});
  }
  if (arcs.empty()) return spider::kTwoPi;
  // Unroll over three turns and sweep for the largest uncovered stretch.
  std::vector<std::pair<double, double>> iv;
  for (auto [t, e] : arcs)
    for (int turn = -1; turn <= 1; ++turn) iv.push_back({t + turn * spider::kTwoPi, t + e + turn * spider::kTwoPi});
  std::sort(iv.begin(), iv.end());
  double gap = 0.0, reach = iv.front().second;
  for (std::size_t k = 1; k < iv.size(); ++k) {
    // Only stretches starting in the middle turn see full coverage on both sides.
    if (iv[k].first > reach && reach >= 0.0 && reach < spider::kTwoPi) gap = std::max(gap, iv[k].first - reach);
    reach = std::max(reach, iv[k].second);
  }
  return gap;
}

}  // namespace oracle
