#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "spider/freespace.h"
#include "spider/io.h"
#include "spider/scene.h"

namespace spider {

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// platform, unlike std::uniform_real_distribution.
inline double unit_random(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// n footholds uniform in [0, side]^2, resampled until no general-position
/// violation is found at tolerance gp_eps (relative to R).
Scene random_gp_scene(std::mt19937_64& rng, std::size_t n, double R, double side, double gp_eps = 1e-6);

/// Box side used by the random suites: about 0.9 sqrt(n) R, so the mean
/// neighbor count stays near constant as n grows.
double default_side(std::size_t n, double R);

struct SceneCheck {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  std::size_t excluded = 0;
  std::size_t midpoints = 0;
  std::size_t midpoint_failures = 0;
  std::size_t edge_count = 0;
  ArrangementStats arrangement;
  std::vector<std::size_t> arcs_per_circle;
};

/// Grid oracle agreement and boundary soundness for one scene. `band` is
/// the exclusion distance around the computed boundary; a negative value
/// means two cell diagonals.
SceneCheck check_scene_against_oracle(const Scene& scene, const FreeSpace& fs, int nx, int ny, double band = -1.0,
                                      double eps = kDefaultEps);

/// Edge-midpoint soundness: the predicate reports stable and marginal.
bool midpoint_is_marginal(const Scene& scene, Point2 P);

struct VerifyOptions {
  std::size_t scenes = 100;
  std::size_t n_min = 3;
  std::size_t n_max = 15;
  int nx = 200;
  int ny = 200;
  std::uint64_t seed = 1;
  double band = -1.0;
  double eps = kDefaultEps;
};

struct VerifyReport {
  std::vector<SceneCheck> scenes;
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  std::size_t excluded = 0;
  std::size_t midpoint_failures = 0;
  double max_edge_ratio = 0.0;
  bool passed() const { return disagreements == 0 && midpoint_failures == 0; }
};

VerifyReport run_verify(const VerifyOptions& options);
VerifyReport verify_single(const Scene& scene, const VerifyOptions& options);

Json verify_json(const VerifyReport& report);

}  // namespace spider
