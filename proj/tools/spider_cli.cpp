#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spider/arrangement.h"
#include "spider/freespace.h"
#include "spider/io.h"
#include "spider/polygonal.h"
#include "spider/stability.h"
#include "spider/svg.h"
#include "spider/verify.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kDisagreement = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scene_path;
  std::string out_path;
  std::string bbox_text;
  std::string res_text;
  std::uint64_t seed = 1;
  double band = -1.0;
  double eps = spider::kDefaultEps;
  std::size_t scenes = 100;
  std::size_t n_min = 3;
  std::size_t n_max = 15;
  bool timing = false;
  bool debug = false;
};

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != expected) throw UsageError(std::string(flag) + ": expected " + std::to_string(expected) + " values");
  return out;
}

spider::BBox resolve_bbox(const Options& o, const spider::Scene& scene) {
  if (o.bbox_text.empty()) return spider::scene_bbox(scene, scene.R);
  auto v = split_numbers(o.bbox_text, 4, "--bbox");
  spider::BBox box{{v[0], v[1]}, {v[2], v[3]}};
  if (box.degenerate()) throw UsageError("--bbox: degenerate box");
  return box;
}

std::pair<int, int> resolve_res(const Options& o, int fallback) {
  if (o.res_text.empty()) return {fallback, fallback};
  auto v = split_numbers(o.res_text, 2, "--res");
  int nx = static_cast<int>(v[0]), ny = static_cast<int>(v[1]);
  if (nx < 2 || ny < 2 || nx != v[0] || ny != v[1]) throw UsageError("--res: need integers >= 2");
  return {nx, ny};
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + o.out_path);
  out << text;
}

spider::Scene need_scene(const Options& o) {
  if (o.scene_path.empty()) throw UsageError("--scene is required");
  return spider::load_scene(o.scene_path);
}

int cmd_compute(const Options& o) {
  spider::Scene scene = need_scene(o);
  if (scene.is_polygonal()) throw UsageError("compute needs a point-foothold scene");
  spider::FreeSpace fs = spider::compute_freespace(scene, o.eps);
  spider::Json j = spider::freespace_json(fs, scene);
  if (o.debug) {
    spider::NeighborTable table = spider::build_neighbor_table(scene);
    spider::Json circles = spider::Json::array();
    for (std::size_t i0 = 0; i0 < scene.footholds.size(); ++i0) {
      auto c = spider::analyze_circle(i0, scene, table, o.eps);
      spider::Json cj;
      cj["i0"] = i0;
      cj["pieces"] = spider::pieces_json(c.pieces);
      auto ivs = [](const std::vector<spider::CoverageInterval>& v) {
        spider::Json a = spider::Json::array();
        for (const auto& iv : v)
          a.push_back({{"lo", spider::round12(iv.lo)}, {"hi", spider::round12(iv.hi)},
                       {"lo_label", spider::to_string(iv.lo_label)}, {"hi_label", spider::to_string(iv.hi_label)}});
        return a;
      };
      cj["sigma"] = ivs(c.sigma);
      cj["sigma_prime"] = ivs(c.sigma_prime);
      circles.push_back(cj);
    }
    j["debug"] = circles;
  }
  emit(o, spider::dump(j));
  return kOk;
}

int cmd_sample(const Options& o) {
  spider::Scene scene = need_scene(o);
  auto [nx, ny] = resolve_res(o, 200);
  auto grid = spider::grid_sample_freespace(scene, resolve_bbox(o, scene), nx, ny, o.eps);
  emit(o, spider::dump(spider::grid_json(grid)));
  return kOk;
}

int cmd_curves(const Options& o) {
  spider::Scene scene = need_scene(o);
  if (!scene.is_polygonal()) throw UsageError("curves needs a polygonal scene");
  emit(o, spider::dump(spider::curves_json(spider::two_contact_tracings(scene, o.eps))));
  return kOk;
}

int cmd_render(const Options& o) {
  spider::Scene scene = need_scene(o);
  spider::BBox box = resolve_bbox(o, scene);
  spider::SvgLayers layers;
  std::optional<spider::FreeSpace> fs;
  std::optional<spider::ContactTracings> curves;
  std::optional<spider::OccupancyGrid> grid;
  if (scene.is_polygonal()) {
    curves = spider::two_contact_tracings(scene, o.eps);
    layers.curves = &*curves;
  } else {
    fs = spider::compute_freespace(scene, o.eps);
    layers.freespace = &*fs;
  }
  if (!o.res_text.empty() || scene.is_polygonal()) {
    auto [nx, ny] = resolve_res(o, 200);
    grid = spider::grid_sample_freespace(scene, box, nx, ny, o.eps);
    layers.grid = &*grid;
  }
  emit(o, spider::render_svg(scene, layers, box));
  return kOk;
}

int cmd_verify(const Options& o) {
  spider::VerifyOptions vo;
  vo.scenes = o.scenes;
  vo.n_min = o.n_min;
  vo.n_max = o.n_max;
  vo.seed = o.seed;
  vo.band = o.band;
  vo.eps = o.eps;
  auto [nx, ny] = resolve_res(o, 200);
  vo.nx = nx;
  vo.ny = ny;
  auto start = std::chrono::steady_clock::now();
  spider::VerifyReport report =
      o.scene_path.empty() ? spider::run_verify(vo) : spider::verify_single(need_scene(o), vo);
  spider::Json j = spider::verify_json(report);
  if (o.timing)
    j["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  emit(o, spider::dump(j));
  return report.passed() ? kOk : kDisagreement;
}

int cmd_stats(const Options& o) {
  spider::Scene scene = need_scene(o);
  if (scene.is_polygonal()) throw UsageError("stats needs a point-foothold scene");
  auto stats = spider::arrangement_stats(spider::build_neighbor_table(scene));
  spider::Json j = spider::stats_json(stats);
  j["arrangement_size"] = spider::arrangement_size(stats);
  j["violations"] = spider::violations_json(spider::validate_general_position(scene, o.eps));
  emit(o, spider::dump(j));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free space of a spider robot: exact boundary, sampled oracle, contact curves"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--scene", o.scene_path, "Scene JSON file");
    sub->add_option("--out", o.out_path, "Output file (default: stdout)");
    sub->add_option("--eps", o.eps, "Scene tolerance, relative to R")->check(CLI::PositiveNumber);
  };
  auto* compute = app.add_subcommand("compute", "Exact free space as JSON (point footholds)");
  common(compute);
  compute->add_flag("--debug", o.debug, "Include torus pieces and coverage intervals per circle");
  auto* sample = app.add_subcommand("sample", "Occupancy grid of the stability predicate");
  common(sample);
  sample->add_option("--bbox", o.bbox_text, "x0,y0,x1,y1");
  sample->add_option("--res", o.res_text, "NX,NY");
  auto* curves = app.add_subcommand("curves", "2-contact tracings as JSON (polygonal footholds)");
  common(curves);
  auto* render = app.add_subcommand("render", "SVG drawing");
  common(render);
  render->add_option("--bbox", o.bbox_text, "x0,y0,x1,y1");
  render->add_option("--res", o.res_text, "NX,NY for an occupancy layer");
  auto* verify = app.add_subcommand("verify", "Check the exact free space against the grid oracle");
  common(verify);
  verify->add_option("--res", o.res_text, "NX,NY");
  verify->add_option("--seed", o.seed, "Seed for the random scenes");
  verify->add_option("--band", o.band, "Boundary exclusion distance (default: two cell diagonals)");
  verify->add_option("--scenes", o.scenes, "Number of random scenes");
  verify->add_option("--n-min", o.n_min, "Smallest foothold count");
  verify->add_option("--n-max", o.n_max, "Largest foothold count");
  verify->add_flag("--timing", o.timing, "Report elapsed time (output is then not reproducible)");
  auto* stats = app.add_subcommand("stats", "Arrangement statistics and general-position report");
  common(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) return cmd_compute(o);
    if (*sample) return cmd_sample(o);
    if (*curves) return cmd_curves(o);
    if (*render) return cmd_render(o);
    if (*verify) return cmd_verify(o);
    if (*stats) return cmd_stats(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const spider::GeneralPositionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const spider::HypothesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& line : e.report()) std::cerr << "  " << line << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}
