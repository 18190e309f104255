#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.h"
#include "spider/polygonal.h"

using namespace spider;

namespace {

Scene polys(std::vector<Polygon> p) {
  Scene s;
  s.R = 1.0;
  s.polygons = std::move(p);
  return s;
}

bool near(Point2 a, Point2 b, double tol = 1e-9) { return distance(a, b) <= tol; }

}  // namespace

TEST_CASE("reachable hull of one wall") {
  std::vector<Wall> w{{{-2, -0.5}, {2, -0.5}, 0}};
  auto h = reachable_hull({0, 0}, w, 1.0);
  REQUIRE(h.size() == 2);
  double r = std::sqrt(0.75);
  CHECK(((near(h[0], {-r, -0.5}) && near(h[1], {r, -0.5})) || (near(h[1], {-r, -0.5}) && near(h[0], {r, -0.5}))));
  CHECK(reachable_hull({0, 5}, w, 1.0).empty());
  auto on = reachable_hull({0, -0.5}, w, 1.0);
  CHECK(std::abs(convex_clearance(on, {0, -0.5})) < 1e-12);
}

TEST_CASE("segment predicate examples") {
  std::vector<Wall> one{{{-2, -0.5}, {2, -0.5}, 0}};
  CHECK_FALSE(is_stable_segments({0, 0}, one, 1.0).stable);
  std::vector<Wall> two{{{-1, -0.5}, {1, -0.5}, 0}, {{-1, 0.5}, {1, 0.5}, 1}};
  auto v = is_stable_segments({0, 0}, two, 1.0);
  CHECK(v.stable);
  CHECK_FALSE(v.marginal);
  CHECK(is_stable_segments({0, -0.5}, one, 1.0).stable);
}

TEST_CASE("segment predicate agrees with the half-disk sweep") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-2, 2);
  int checked = 0;
  for (int k = 0; k < 3000; ++k) {
    std::vector<Wall> walls;
    for (int w = 0; w < 3; ++w) walls.push_back({{U(rng), U(rng)}, {U(rng), U(rng)}, std::size_t(w)});
    Point2 P{U(rng) * 0.5, U(rng) * 0.5};
    double gap = oracle::segment_direction_gap(P, walls, 1.0);
    if (std::abs(gap - kPi) <= kTwoPi / 720) continue;
    auto o = oracle::half_disk_sweep(P, walls, 1.0, 720);
    CHECK(is_stable_segments(P, walls, 1.0).stable == o.stable);
    CHECK(o.stable == (gap <= kPi));
    ++checked;
  }
  CHECK(checked > 2500);
}

TEST_CASE("polygonal sampling") {
  SUBCASE("one polygon seen from far away") {
    Scene s = polys({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
    BBox b{{-5, -5}, {6, 6}};
    auto g = sample_freespace_polygonal(s, b, 110, 110);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        Point2 c = g.cell_center(ix, iy);
        bool inside = c.x > 0 && c.x < 1 && c.y > 0 && c.y < 1;
        double clear = std::min({std::abs(c.x), std::abs(c.x - 1), std::abs(c.y), std::abs(c.y - 1)});
        // Near the square only F_e can add cells; far from it nothing is stable.
        if (inside) CHECK(g.at(ix, iy));
        if (distance(c, {0.5, 0.5}) > 2.5 && clear > 1e-9) CHECK_FALSE(g.at(ix, iy));
      }
  }
  SUBCASE("two squares bridge the gap") {
    Scene s = polys({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{2.5, 0}, {3.5, 0}, {3.5, 1}, {2.5, 1}}});
    BBox b{{-0.5, -0.5}, {4, 1.5}};
    auto g = sample_freespace_polygonal(s, b, 90, 40);
    int bridge = 0;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        Point2 c = g.cell_center(ix, iy);
        if (c.x > 1.05 && c.x < 2.45) {
          CHECK(g.at(ix, iy) == is_stable_polygonal(c, s).stable);
          bridge += g.at(ix, iy);
        }
      }
    CHECK(bridge > 0);
  }
  SUBCASE("empty scene") {
    Scene s;
    s.R = 1;
    auto g = sample_freespace_polygonal(s, BBox{{0, 0}, {1, 1}}, 10, 10);
    CHECK(g.count() == 0);
  }
}

TEST_CASE("walls and corners") {
  Scene s = polys({{{0, 0}, {1, 0}, {1, 1}}, {{1, 1}, {2, 1}, {2, 2}}});
  auto w = scene_walls(s);
  CHECK(w.size() == 6);
  auto c = scene_corners(s, w);
  CHECK(c.size() == 5);
  CHECK(point_in_polygon(s.polygons[0], {0.7, 0.3}));
  CHECK_FALSE(point_in_polygon(s.polygons[0], {0.3, 0.7}));
}

TEST_CASE("two corners within R: relevant part is the joining segment") {
  // Apexes facing each other across y = 0; the ladder along y = 0 touches
  // both corners without entering either body.
  Scene s = polys({{{0, 0}, {0.5, -1}, {-0.5, -1}}, {{0.8, 0}, {1.3, 1}, {0.3, 1}}});
  auto t = two_contact_tracings(s);
  const ContactCurve* seg = nullptr;
  for (const auto& c : t.curves)
    if (c.kind == ContactKind::Segment &&
        ((near(c.c1, {0, 0}) && near(c.c2, {0.8, 0})) || (near(c.c2, {0, 0}) && near(c.c1, {0.8, 0}))))
      seg = &c;
  REQUIRE(seg);
  REQUIRE(seg->relevant.size() == 1);
  Point2 a = seg->at(seg->relevant[0].first).midpoint;
  Point2 b = seg->at(seg->relevant[0].second).midpoint;
  CHECK(((near(a, seg->c1) && near(b, seg->c2))));
}

TEST_CASE("corner farther than R from a wall: conchoid wholly relevant") {
  Scene s = polys({{{-3, -2.5}, {3, -2.5}, {3, -1.5}, {-3, -1.5}}, {{0, 0}, {-1, 0.1}, {-1, -0.1}}});
  auto t = two_contact_tracings(s);
  const ContactCurve* k = nullptr;
  for (const auto& c : t.curves)
    if (c.kind == ContactKind::ConchoidArc && near(c.c1, {0, 0}) && std::abs(c.w1.a.y + 1.5) < 1e-12 &&
        std::abs(c.w1.b.y + 1.5) < 1e-12)
      k = &c;
  REQUIRE(k);
  REQUIRE(k->relevant.size() == 1);
  CHECK(k->relevant[0].first == doctest::Approx(k->t0).epsilon(1e-9));
  CHECK(k->relevant[0].second == doctest::Approx(k->t1).epsilon(1e-9));
  for (int j = 0; j <= 50; ++j) {
    double u = k->t0 + (k->t1 - k->t0) * j / 50;
    auto L = k->at(u);
    CHECK(std::abs(distance(L.midpoint, L.end_a) - 1.0) < 1e-9);
    CHECK(point_segment_distance({0, 0}, L.end_a, L.end_b) < 1e-9);
  }
}

TEST_CASE("circular arcs are wholly irrelevant") {
  Scene s = polys({{{0, 0}, {1, 0}, {0.5, 1}}});
  auto t = two_contact_tracings(s);
  int arcs = 0;
  for (const auto& c : t.curves)
    if (c.kind == ContactKind::CircularArc) {
      ++arcs;
      CHECK(c.relevant.empty());
      auto L = c.at(0.5 * (c.t0 + c.t1));
      CHECK(distance(L.midpoint, c.c1) == doctest::Approx(1.0));
    }
  CHECK(arcs == 3);
}

TEST_CASE("ellipse arcs keep both ends on their walls") {
  Scene s = polys({{{-2, -0.6}, {2, -0.6}, {0, -2}}, {{-0.3, 0.9}, {0.6, 0.4}, {1.5, 1.5}}});
  auto t = two_contact_tracings(s);
  int ellipses = 0;
  for (const auto& c : t.curves) {
    if (c.kind != ContactKind::EllipseArc) continue;
    ++ellipses;
    for (int j = 0; j <= 20; ++j) {
      auto L = c.at(c.t0 + (c.t1 - c.t0) * j / 20);
      CHECK(point_segment_distance(L.end_a, c.w1.a, c.w1.b) < 1e-9);
      CHECK(point_segment_distance(L.end_b, c.w2.a, c.w2.b) < 1e-9);
      CHECK(distance(L.end_a, L.end_b) == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
  CHECK(ellipses > 0);
}

TEST_CASE("degenerate polygons are refused by curve generation only") {
  Scene s = polys({{{0, 0}, {2, 0}}});
  CHECK_THROWS_AS(two_contact_tracings(s), HypothesisError);
  CHECK(is_stable_polygonal({1, 0}, s).stable);
  CHECK_FALSE(is_stable_polygonal({1, 0.5}, s).stable);
}
