#include "spider/verify.h"

#include <algorithm>
#include <cmath>

#include "spider/arrangement.h"
#include "spider/parallel.h"
#include "spider/stability.h"

namespace spider {

Scene random_gp_scene(std::mt19937_64& rng, std::size_t n, double R, double side, double gp_eps) {
  for (;;) {
    Scene scene;
    scene.R = R;
    for (std::size_t k = 0; k < n; ++k) scene.footholds.push_back({side * unit_random(rng), side * unit_random(rng)});
    if (validate_general_position(scene, gp_eps).empty()) return scene;
  }
}

double default_side(std::size_t n, double R) { return 0.9 * std::sqrt(static_cast<double>(n)) * R; }

bool midpoint_is_marginal(const Scene& scene, Point2 P) {
  StabilityVerdict v = is_stable_point_footholds(P, scene, kDefaultEps);
  return v.stable && v.marginal;
}

SceneCheck check_scene_against_oracle(const Scene& scene, const FreeSpace& fs, int nx, int ny, double band,
                                      double eps) {
  SceneCheck out;
  out.n = scene.footholds.size();
  out.edge_count = fs.stats.edge_count;
  out.arrangement = fs.stats.arrangement;
  BBox box = scene_bbox(scene, scene.R);
  OccupancyGrid grid = grid_sample_freespace(scene, box, nx, ny, eps);
  double delta = band >= 0.0 ? band : 2.0 * grid.cell_diagonal();
  std::vector<std::size_t> excluded(ny, 0), wrong(ny, 0);
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t iy) {
    for (int ix = 0; ix < nx; ++ix) {
      Point2 p = grid.cell_center(ix, static_cast<int>(iy));
      if (boundary_distance(fs, scene, p) <= delta) {
        ++excluded[iy];
        continue;
      }
      if (boundary_contains(fs, scene, p, eps * scene.R) != grid.at(ix, static_cast<int>(iy))) ++wrong[iy];
    }
  });
  out.samples = static_cast<std::size_t>(nx) * ny;
  for (int iy = 0; iy < ny; ++iy) {
    out.excluded += excluded[iy];
    out.disagreements += wrong[iy];
  }
  auto check = [&](Point2 m) {
    ++out.midpoints;
    if (!midpoint_is_marginal(scene, m)) ++out.midpoint_failures;
  };
  for (const auto& loop : fs.loops)
    for (const auto& e : loop) check(edge_midpoint(e, scene));
  for (const SegEdge& s : fs.isolated_segments) check(segment_point(s, scene, 0.5 * (s.t0 + s.t1)));
  out.arcs_per_circle.assign(scene.footholds.size(), 0);
  for (const auto& loop : fs.loops)
    for (const auto& e : loop)
      if (auto* a = std::get_if<ArcEdge>(&e)) ++out.arcs_per_circle[a->i];
  return out;
}

namespace {

void accumulate(VerifyReport& r, SceneCheck c) {
  r.samples += c.samples;
  r.disagreements += c.disagreements;
  r.excluded += c.excluded;
  r.midpoint_failures += c.midpoint_failures;
  double ratio = static_cast<double>(c.edge_count) / static_cast<double>(std::max<std::size_t>(1, arrangement_size(c.arrangement)));
  r.max_edge_ratio = std::max(r.max_edge_ratio, ratio);
  r.scenes.push_back(std::move(c));
}

}  // namespace

VerifyReport verify_single(const Scene& scene, const VerifyOptions& options) {
  VerifyReport r;
  FreeSpace fs = compute_freespace(scene, options.eps);
  accumulate(r, check_scene_against_oracle(scene, fs, options.nx, options.ny, options.band, options.eps));
  return r;
}

VerifyReport run_verify(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  VerifyReport r;
  std::size_t span = options.n_max >= options.n_min ? options.n_max - options.n_min + 1 : 1;
  for (std::size_t k = 0; k < options.scenes; ++k) {
    std::size_t n = options.n_min + static_cast<std::size_t>(unit_random(rng) * static_cast<double>(span));
    Scene scene = random_gp_scene(rng, n, 1.0, default_side(n, 1.0));
    FreeSpace fs = compute_freespace(scene, options.eps);
    accumulate(r, check_scene_against_oracle(scene, fs, options.nx, options.ny, options.band, options.eps));
  }
  return r;
}

Json verify_json(const VerifyReport& report) {
  Json scenes = Json::array();
  std::size_t vertices = 0;
  for (const SceneCheck& c : report.scenes) {
    Json j;
    j["n"] = c.n;
    j["samples"] = c.samples;
    j["disagreements"] = c.disagreements;
    j["boundary_band_excluded"] = c.excluded;
    j["boundary_midpoints"] = c.midpoints;
    j["midpoint_failures"] = c.midpoint_failures;
    j["edge_count"] = c.edge_count;
    j["arrangement"] = stats_json(c.arrangement);
    j["arcs_per_circle"] = c.arcs_per_circle;
    scenes.push_back(j);
    vertices += c.arrangement.vertex_count;
  }
  Json out;
  out["samples"] = report.samples;
  out["disagreements"] = report.disagreements;
  out["boundary_band_excluded"] = report.excluded;
  out["midpoint_failures"] = report.midpoint_failures;
  out["arrangement_vertices_total"] = vertices;
  out["max_edge_ratio"] = round12(report.max_edge_ratio);
  out["passed"] = report.passed();
  out["scenes"] = scenes;
  return out;
}

}  // namespace spider
