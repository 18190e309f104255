#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "oracles.h"
#include "spider/arrangement.h"
#include "spider/torus.h"
#include "spider/verify.h"

using namespace spider;

namespace {

Scene points(std::vector<Point2> s) {
  Scene sc;
  sc.R = 1.0;
  sc.footholds = std::move(s);
  return sc;
}

std::vector<TorusPiece> neighbor_pieces(const std::vector<TorusPiece>& all, std::size_t i) {
  std::vector<TorusPiece> out;
  for (const auto& p : all)
    if (p.i == i) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("distance cases") {
  CHECK(classify_distance_case(0.5, 1) == DistanceCase::Near);
  CHECK(classify_distance_case(1.2, 1) == DistanceCase::Mid);
  CHECK(classify_distance_case(1.5, 1) == DistanceCase::Far);
  CHECK(classify_distance_case(std::sqrt(2.0), 1) == DistanceCase::Far);
  CHECK(classify_distance_case(2.5, 1) == DistanceCase::OutOfRange);
  CHECK_THROWS_WITH(classify_distance_case(1.0, 1), "general-position violation");
  CHECK_THROWS_WITH(classify_distance_case(2.0, 1), "general-position violation");
}

TEST_CASE("rho theta closed form") {
  Scene s = points({{0, 0}, {0.5, 0}});
  CHECK(angular_difference(Angle(0), rho_theta(Angle(0), s, 0, 1, 1)) == doctest::Approx(0).epsilon(1e-12));
  CHECK(angular_difference(Angle(0), rho_theta(Angle(kPi / 3), s, 0, 1, 1)) == doctest::Approx(kHalfPi));
  CHECK(angular_difference(Angle(0), rho_theta(Angle(kPi / 3), s, 0, 1, -1)) == doctest::Approx(-kHalfPi));
  Scene far = points({{0, 0}, {1.5, 0}});
  CHECK_THROWS_WITH(rho_theta(Angle(kPi), far, 0, 1, 1), "spoke cannot reach");
}

TEST_CASE("piece counts per distance case") {
  SUBCASE("far") {
    Scene s = points({{0, 0}, {1.5, 0}});
    auto all = build_pieces(0, s, build_neighbor_table(s));
    auto ps = neighbor_pieces(all, 1);
    REQUIRE(ps.size() == 2);
    for (const auto& p : ps) {
      CHECK(p.omega == Omega::One);
      CHECK(p.u_interval.extent == doctest::Approx(2 * std::acos(0.75)).epsilon(1e-12));
    }
  }
  SUBCASE("mid") {
    Scene s = points({{0, 0}, {1.2, 0}});
    auto ps = neighbor_pieces(build_pieces(0, s, build_neighbor_table(s)), 1);
    REQUIRE(ps.size() == 6);
    double total = 0;
    for (const auto& p : ps) {
      CHECK(p.omega == (p.k == 2 ? Omega::One : Omega::Two));
      if (p.sign > 0) total += p.u_interval.extent;
    }
    CHECK(total == doctest::Approx(2 * std::acos(0.6)).epsilon(1e-12));
  }
  SUBCASE("near") {
    Scene s = points({{0, 0}, {0.5, 0}});
    auto ps = neighbor_pieces(build_pieces(0, s, build_neighbor_table(s)), 1);
    REQUIRE(ps.size() == 4);
    double total = 0;
    for (const auto& p : ps) {
      CHECK(p.omega == Omega::Two);
      if (p.sign > 0) total += p.u_interval.extent;
    }
    // The two halves meet at u = beta and together span the reach of C_1.
    CHECK(total == doctest::Approx(2 * std::acos(0.25)).epsilon(1e-12));
  }
  SUBCASE("self band") {
    Scene s = points({{0, 0}});
    auto ps = build_pieces(0, s, build_neighbor_table(s));
    REQUIRE(ps.size() == 4);
    for (double u : {0.3, 1.0, 2.5}) {
      for (const auto& p : ps) {
        if (p.sign > 0) CHECK(p.w(u) == doctest::Approx(0.0));
        else CHECK(p.w(u) == doctest::Approx(-kPi));
      }
    }
  }
}

TEST_CASE("mid split sits at the tangency parameters") {
  Scene s = points({{0, 0}, {1.2, 0}});
  auto ps = neighbor_pieces(build_pieces(0, s, build_neighbor_table(s)), 1);
  for (const auto& p : ps) {
    if (p.k != 2) continue;
    // |U(u) - s_i|^2 = d^2 - R^2 at both ends of the middle piece.
    for (double u : {p.u_interval.start.value(), p.u_interval.lifted_end()}) {
      Point2 U = unit_vector(u);
      CHECK(norm2(U - Point2{1.2, 0}) == doctest::Approx(1.44 - 1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("torus properties on random scenes") {
  std::mt19937_64 rng(11);
  for (int sc = 0; sc < 10; ++sc) {
    Scene s = random_gp_scene(rng, 8, 1.0, default_side(8, 1.0));
    auto table = build_neighbor_table(s);
    for (std::size_t i0 = 0; i0 < s.footholds.size(); ++i0) {
      auto ps = build_pieces(i0, s, table);
      std::map<std::pair<std::size_t, int>, std::vector<const TorusPiece*>> pairs;
      for (const auto& p : ps) pairs[{p.i, p.k}].push_back(&p);
      for (auto& [key, v] : pairs) {
        REQUIRE(v.size() == 2);
        const TorusPiece* up = v[0]->sign > 0 ? v[0] : v[1];
        const TorusPiece* dn = v[0]->sign > 0 ? v[1] : v[0];
        for (auto [lo, hi] : up->u_interval.lifted_ranges())
          for (int k = 1; k < 100; ++k) {
            double u = lo + (hi - lo) * k / 100;
            double diff = up->theta(u) - dn->theta(u) - kPi;
            CHECK(std::abs(std::remainder(diff, kTwoPi)) < 1e-12);
            for (const TorusPiece* p : v) CHECK(std::abs(p->w(u) - band_center(p->band)) <= kHalfPi);
          }
      }
    }
  }
}

TEST_CASE("pieces of distinct neighbors cross at most once") {
  std::mt19937_64 rng(5);
  for (int sc = 0; sc < 10; ++sc) {
    Scene s = random_gp_scene(rng, 10, 1.0, default_side(10, 1.0));
    auto table = build_neighbor_table(s);
    for (std::size_t i0 = 0; i0 < s.footholds.size(); ++i0) {
      auto ps = build_pieces(i0, s, table);
      for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = a + 1; b < ps.size(); ++b) {
          if (ps[a].i == ps[b].i || ps[a].band != ps[b].band) continue;
          for (auto [lo, hi] : oracle::common_ranges(ps[a], ps[b]))
            CHECK(oracle::sign_changes(ps[a], ps[b], lo, hi, 400) <= 1);
        }
    }
  }
}
