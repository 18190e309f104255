#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spider/arrangement.h"
#include "spider/stability.h"

using namespace spider;

namespace {

Scene points(std::vector<Point2> s, double R = 1.0) {
  Scene sc;
  sc.R = R;
  sc.footholds = std::move(s);
  return sc;
}

// Half-disk oracle: P is unstable iff some open half-plane through P
// holds every reachable foothold. Sweeps 3600 normals.
bool half_plane_unstable(Point2 P, const std::vector<Point2>& reach) {
  for (int k = 0; k < 3600; ++k) {
    Point2 n = unit_vector(k * kTwoPi / 3600);
    bool all = true;
    for (auto s : reach)
      if (dot(s - P, n) <= 1e-12) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return reach.empty();
}

}  // namespace

TEST_CASE("reachable footholds") {
  auto r = reachable_footholds({0, 0}, points({{0.5, 0}, {3, 0}}));
  REQUIRE(r.size() == 1);
  CHECK(r[0] == Point2{0.5, 0});
  CHECK(reachable_footholds({0, 0}, points({})).empty());
  auto edge = reachable_footholds({0, 0}, points({{1, 0}}));
  CHECK(edge.size() == 1);
}

TEST_CASE("max angular gap") {
  CHECK(max_angular_gap({0.0, kTwoPi / 3, 2 * kTwoPi / 3}) == doctest::Approx(kTwoPi / 3));
  CHECK(max_angular_gap({0.0, kHalfPi, kPi}) == doctest::Approx(kPi));
  CHECK(max_angular_gap(std::vector<double>{}) == doctest::Approx(kTwoPi));
}

TEST_CASE("point predicate examples") {
  auto v = is_stable_point_footholds({0, 0}, points({{0.5, 0}, {-0.5, 0.3}, {0, -0.5}}));
  CHECK(v.stable);
  CHECK_FALSE(v.marginal);

  auto u = is_stable_point_footholds({0, 0}, points({{0.3, 0.1}, {0.6, -0.2}}));
  CHECK_FALSE(u.stable);

  auto c = is_stable_point_footholds({0, 0}, points({{0, 0}}));
  CHECK(c.stable);
}

TEST_CASE("marginal on a segment between two footholds") {
  auto v = is_stable_point_footholds({0.6, 0}, points({{0, 0}, {1.2, 0}}));
  CHECK(v.stable);
  CHECK(v.marginal);
  CHECK_FALSE(is_stable_point_footholds({0.6, 0.01}, points({{0, 0}, {1.2, 0}})).stable);
}

TEST_CASE("a foothold on the rim of the leg disk makes the point marginal") {
  // Three footholds hold P strictly, but one of them is exactly R away; P
  // is on the boundary of the free space.
  Scene s = points({{1, 0}, {-0.5, 0.5}, {-0.5, -0.5}});
  auto v = is_stable_point_footholds({0, 0}, s);
  CHECK(v.stable);
  CHECK(v.marginal);
  auto w = is_stable_point_footholds({0.01, 0}, s);
  CHECK(w.stable);
  CHECK_FALSE(w.marginal);
}

TEST_CASE("predicate agrees with the half-plane oracle on random scenes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point2> s;
    for (int k = 0; k < 6; ++k) s.push_back({U(rng), U(rng)});
    Scene sc = points(s);
    for (int q = 0; q < 50; ++q) {
      Point2 P{U(rng), U(rng)};
      auto reach = reachable_footholds(P, sc);
      auto v = is_stable_point_footholds(P, sc);
      // The sweep resolves gaps only to its angular step.
      if (v.marginal || std::abs(v.gap - kPi) < 2 * kTwoPi / 3600) continue;
      CHECK(v.stable == !half_plane_unstable(P, reach));
      ++checked;
    }
  }
  CHECK(checked > 5000);
}

TEST_CASE("grid of a single foothold has one stable cell") {
  BBox b{{-2, -2}, {2, 2}};
  auto g = grid_sample_freespace(points({{0, 0}}), b, 101, 101);
  CHECK(g.count() == 1);
  CHECK(g.at(50, 50));
}

TEST_CASE("grid of a small triangle is the closed triangle") {
  double h = 0.5 * std::sqrt(3.0) / 2;
  Scene s = points({{0, 0}, {0.5, 0}, {0.25, h}});
  BBox b{{-0.1, -0.1}, {0.6, 0.6}};
  auto g = grid_sample_freespace(s, b, 120, 120);
  std::vector<Point2> tri = s.footholds;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      Point2 c = g.cell_center(ix, iy);
      double cl = convex_clearance(tri, c);
      if (std::abs(cl) < 1e-9) continue;
      CHECK(g.at(ix, iy) == (cl > 0));
    }
}

TEST_CASE("grid of the two-foothold scene lies on the segment") {
  Scene s = points({{0, 0}, {1.2, 0}});
  BBox b{{-0.5, -0.5}, {1.7, 0.5}};
  auto g = grid_sample_freespace(s, b, 111, 51);
  CHECK(g.count() > 0);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      if (g.at(ix, iy)) {
        Point2 c = g.cell_center(ix, iy);
        CHECK(std::abs(c.y) < 1e-9);
        CHECK(c.x >= 0.2 - 1e-9);
        CHECK(c.x <= 1.0 + 1e-9);
      }
}

TEST_CASE("grid rejects a degenerate box") {
  BBox b{{0, 0}, {0, 1}};
  CHECK_THROWS(grid_sample_freespace(points({{0, 0}}), b, 10, 10));
}

TEST_CASE("neighbor table") {
  auto t = build_neighbor_table(points({{0, 0}, {0.5, 0}}));
  REQUIRE(t[0].size() == 1);
  REQUIRE(t[1].size() == 1);
  CHECK(t[0][0].i == 1);
  CHECK(t[0][0].d == doctest::Approx(0.5));
  CHECK(build_neighbor_table(points({{0, 0}, {3, 0}}))[0].empty());

  auto u = build_neighbor_table(points({{0, 0}, {1, 0}}));
  CHECK(angular_difference(Angle(0), u[0][0].theta1) == doctest::Approx(-kPi / 3));
  CHECK(angular_difference(Angle(0), u[0][0].theta3) == doctest::Approx(kPi / 3));
  // The arc from theta1 to theta3 runs inside disk(s_1, R).
  Point2 mid = Circle({0, 0}, 1).point_at(0.0);
  CHECK(distance(mid, {1, 0}) < 1.0);
}

TEST_CASE("arrangement statistics") {
  auto two = arrangement_stats(build_neighbor_table(points({{0, 0}, {1.2, 0}})));
  CHECK(two.vertex_count == 2);
  CHECK(two.edge_count == 4);
  auto far = arrangement_stats(build_neighbor_table(points({{0, 0}, {10, 0}, {20, 0}})));
  CHECK(far.vertex_count == 0);
  CHECK(far.edge_count == 3);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<Point2> s;
  for (int k = 0; k < 10; ++k) s.push_back({U(rng), U(rng)});
  auto st = arrangement_stats(build_neighbor_table(points(s)));
  std::size_t pairs = 0;
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b)
      if (distance(s[a], s[b]) < 2) ++pairs;
  CHECK(st.vertex_count == 2 * pairs);
}

TEST_CASE("general position violations") {
  auto v2 = validate_general_position(points({{0, 0}, {2, 0}}));
  REQUIRE_FALSE(v2.empty());
  CHECK(std::string(to_string(v2[0].kind)) == "distance 2R");
  auto v1 = validate_general_position(points({{0, 0}, {1, 0}}));
  REQUIRE_FALSE(v1.empty());
  CHECK(std::string(to_string(v1[0].kind)) == "distance R");
  CHECK(validate_general_position(points({{0, 0}, {0.5, 0.1}, {1.1, -0.3}})).empty());

  // Three circles through one point: centers on a unit circle around the origin.
  Scene tri = points({unit_vector(0.1), unit_vector(2.0), unit_vector(4.2)});
  bool triple = false;
  for (auto& v : validate_general_position(tri)) triple |= v.kind == ViolationKind::TriplePoint;
  CHECK(triple);
}
