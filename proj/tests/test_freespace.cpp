#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <variant>
#include <vector>

#include "spider/freespace.h"
#include "spider/verify.h"

using namespace spider;

namespace {

Scene points(std::vector<Point2> s) {
  Scene sc;
  sc.R = 1.0;
  sc.footholds = std::move(s);
  return sc;
}

Scene triangle(double side) {
  return points({{0, 0}, {side, 0}, {side / 2, side * std::sqrt(3.0) / 2}});
}

bool near(Point2 a, Point2 b, double tol = 1e-9) { return distance(a, b) <= tol; }

}  // namespace

TEST_CASE("hull footholds of a small triangle") {
  Scene s = triangle(0.5);
  auto h = hull_vertex_footholds(s, build_neighbor_table(s));
  REQUIRE(h.size() == 3);
  for (const auto& f : h) {
    REQUIRE(f.before);
    REQUIRE(f.after);
    CHECK(f.before->i < f.before->j);
    CHECK((f.before->i == f.index || f.before->j == f.index));
    CHECK((f.after->i == f.index || f.after->j == f.index));
    CHECK_FALSE(*f.before == *f.after);
  }
}

TEST_CASE("hull footholds skip a flat middle vertex") {
  Scene s = points({{0, 0}, {0.4, 0}, {0.8, 0}});
  auto h = hull_vertex_footholds(s, build_neighbor_table(s));
  std::vector<std::size_t> idx;
  for (const auto& f : h) idx.push_back(f.index);
  std::sort(idx.begin(), idx.end());
  CHECK(idx == std::vector<std::size_t>{0, 2});
}

TEST_CASE("hull footholds of a lone foothold carry no labels") {
  Scene s = points({{0, 0}});
  auto h = hull_vertex_footholds(s, build_neighbor_table(s));
  REQUIRE(h.size() == 1);
  CHECK_FALSE(h[0].before);
  CHECK_FALSE(h[0].after);
}

TEST_CASE("golden: single foothold") {
  auto fs = compute_freespace(points({{0, 0}}));
  CHECK(fs.loops.empty());
  CHECK(fs.isolated_segments.empty());
  REQUIRE(fs.isolated_points.size() == 1);
  CHECK(near(fs.isolated_points[0], {0, 0}));
}

TEST_CASE("golden: two footholds") {
  Scene s = points({{0, 0}, {1.2, 0}});
  auto fs = compute_freespace(s);
  CHECK(fs.loops.empty());
  REQUIRE(fs.isolated_segments.size() == 1);
  Point2 a = segment_point(fs.isolated_segments[0], s, fs.isolated_segments[0].t0);
  Point2 b = segment_point(fs.isolated_segments[0], s, fs.isolated_segments[0].t1);
  if (a.x > b.x) std::swap(a, b);
  CHECK(near(a, {0.2, 0}));
  CHECK(near(b, {1.0, 0}));
  // Each foothold is a stable placement of its own.
  REQUIRE(fs.isolated_points.size() == 2);
  CHECK(contains(s, fs.isolated_points[0]).stable);
  CHECK(contains(s, fs.isolated_points[1]).stable);
}

TEST_CASE("golden: small triangle is one loop of three segments") {
  Scene s = triangle(0.5);
  auto fs = compute_freespace(s);
  REQUIRE(fs.loops.size() == 1);
  REQUIRE(fs.loops[0].size() == 3);
  for (const auto& e : fs.loops[0]) {
    REQUIRE(std::holds_alternative<SegEdge>(e));
    Point2 p = edge_start(e, s);
    bool at_vertex = false;
    for (auto f : s.footholds) at_vertex |= near(p, f);
    CHECK(at_vertex);
  }
  CHECK(fs.isolated_points.empty());
  CHECK(fs.isolated_segments.empty());
  // Interior on the left: the loop is counterclockwise.
  double area = 0;
  for (const auto& e : fs.loops[0]) area += cross(edge_start(e, s), edge_end(e, s));
  CHECK(area > 0);
}

TEST_CASE("loops are closed and every edge midpoint is marginal") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 15; ++k) {
    std::size_t n = 3 + k % 10;
    Scene s = random_gp_scene(rng, n, 1.0, default_side(n, 1.0));
    auto fs = compute_freespace(s);
    for (const auto& loop : fs.loops) {
      for (std::size_t e = 0; e < loop.size(); ++e) {
        CHECK(near(edge_end(loop[e], s), edge_start(loop[(e + 1) % loop.size()], s), 1e-7));
        CHECK(midpoint_is_marginal(s, edge_midpoint(loop[e], s)));
      }
    }
    for (const auto& g : fs.isolated_segments) CHECK(midpoint_is_marginal(s, edge_midpoint(g, s)));
  }
}

TEST_CASE("membership queries") {
  Scene tri = triangle(0.5);
  CHECK(contains(tri, {0.25, 0.5 * std::sqrt(3.0) / 6}).stable);
  CHECK_FALSE(contains(tri, {10, 10}).stable);
  auto v = contains(points({{0, 0}, {1.2, 0}}), {0.6, 0});
  CHECK(v.stable);
  CHECK(v.marginal);
}

TEST_CASE("boundary membership agrees with the predicate off the boundary") {
  Scene s = triangle(1.4);
  auto fs = compute_freespace(s);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1.2, 2.6);
  int checked = 0;
  for (int k = 0; k < 4000; ++k) {
    Point2 P{U(rng), U(rng)};
    if (boundary_distance(fs, s, P) < 1e-6) continue;
    CHECK(boundary_contains(fs, s, P, 1e-9) == contains(s, P).stable);
    ++checked;
  }
  CHECK(checked > 3500);
}

TEST_CASE("general-position violations are rejected") {
  CHECK_THROWS_AS(compute_freespace(points({{0, 0}, {1, 0}})), GeneralPositionError);
  Scene poly;
  poly.R = 1;
  poly.polygons = {{{0, 0}, {1, 0}, {1, 1}}};
  CHECK_THROWS_AS(compute_freespace(poly), std::invalid_argument);
}
