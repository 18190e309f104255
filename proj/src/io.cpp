#include "spider/io.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spider {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero in outputs
}

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

Json point_json(Point2 p) { return Json::array({round12(p.x), round12(p.y)}); }

Point2 parse_point(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(where + ": expected [x, y]");
  Point2 p{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(p)) throw std::invalid_argument(where + ": non-finite coordinate");
  return p;
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t k = 0; k < bytes.size(); k += 3) {
    std::uint32_t chunk = static_cast<std::uint32_t>(bytes[k]) << 16;
    if (k + 1 < bytes.size()) chunk |= static_cast<std::uint32_t>(bytes[k + 1]) << 8;
    if (k + 2 < bytes.size()) chunk |= bytes[k + 2];
    out += kAlphabet[(chunk >> 18) & 63];
    out += kAlphabet[(chunk >> 12) & 63];
    out += k + 1 < bytes.size() ? kAlphabet[(chunk >> 6) & 63] : '=';
    out += k + 2 < bytes.size() ? kAlphabet[chunk & 63] : '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 length must be a multiple of 4");
  std::vector<std::uint8_t> out;
  for (std::size_t k = 0; k < text.size(); k += 4) {
    std::uint32_t chunk = 0;
    int pad = 0;
    for (int q = 0; q < 4; ++q) {
      char c = text[k + q];
      int v = 0;
      if (c == '=') ++pad;
      else if ((v = value(c)) < 0) throw std::invalid_argument("invalid base64 character");
      chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
    }
    out.push_back(static_cast<std::uint8_t>(chunk >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((chunk >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(chunk & 0xff));
  }
  return out;
}

Scene parse_scene(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed scene JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("scene must be a JSON object");
  if (!j.contains("R") || !j["R"].is_number()) throw std::invalid_argument("scene needs a numeric \"R\"");
  Scene scene;
  scene.R = j["R"].get<double>();
  if (!(scene.R > 0.0) || !std::isfinite(scene.R)) throw std::invalid_argument("R must be positive");
  bool has_f = j.contains("footholds");
  bool has_p = j.contains("polygons");
  if (has_f == has_p) throw std::invalid_argument("scene needs exactly one of \"footholds\" or \"polygons\"");
  if (has_f) {
    const Json& f = j["footholds"];
    if (!f.is_array()) throw std::invalid_argument("\"footholds\" must be an array");
    for (std::size_t k = 0; k < f.size(); ++k) scene.footholds.push_back(parse_point(f[k], "foothold " + std::to_string(k)));
  } else {
    const Json& ps = j["polygons"];
    if (!ps.is_array()) throw std::invalid_argument("\"polygons\" must be an array");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      if (!ps[k].is_array()) throw std::invalid_argument("polygon " + std::to_string(k) + " must be an array");
      Polygon poly;
      for (std::size_t v = 0; v < ps[k].size(); ++v)
        poly.push_back(parse_point(ps[k][v], "polygon " + std::to_string(k) + " vertex " + std::to_string(v)));
      scene.polygons.push_back(std::move(poly));
    }
    if (scene.polygons.empty()) throw std::invalid_argument("\"polygons\" is empty");
  }
  check_scene(scene);
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read scene file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string scene_to_json(const Scene& scene) {
  Json j;
  j["R"] = scene.R;
  auto pt = [](Point2 p) { return Json::array({p.x, p.y}); };
  if (scene.is_polygonal()) {
    Json ps = Json::array();
    for (const Polygon& poly : scene.polygons) {
      Json pj = Json::array();
      for (Point2 p : poly) pj.push_back(pt(p));
      ps.push_back(pj);
    }
    j["polygons"] = ps;
  } else {
    Json fs = Json::array();
    for (Point2 p : scene.footholds) fs.push_back(pt(p));
    j["footholds"] = fs;
  }
  return dump(j);
}

Json freespace_json(const FreeSpace& fs, const Scene& scene) {
  (void)scene;
  auto seg = [](const SegEdge& e) {
    Json j;
    j["type"] = "seg";
    j["i"] = e.i;
    j["j"] = e.j;
    j["t0"] = round12(e.t0);
    j["t1"] = round12(e.t1);
    return j;
  };
  Json loops = Json::array();
  for (const auto& loop : fs.loops) {
    Json lj = Json::array();
    for (const auto& e : loop) {
      if (auto* a = std::get_if<ArcEdge>(&e)) {
        Json j;
        j["type"] = "arc";
        j["i"] = a->i;
        j["a0"] = round12(a->interval.start.value());
        j["a1"] = round12(a->interval.lifted_end());
        lj.push_back(j);
      } else {
        lj.push_back(seg(std::get<SegEdge>(e)));
      }
    }
    loops.push_back(lj);
  }
  Json pts = Json::array();
  for (Point2 p : fs.isolated_points) pts.push_back(point_json(p));
  Json segs = Json::array();
  for (const SegEdge& e : fs.isolated_segments) segs.push_back(seg(e));
  Json stats;
  stats["n"] = fs.stats.arrangement.n;
  stats["arrangement_vertices"] = fs.stats.arrangement.vertex_count;
  stats["arrangement_edges"] = fs.stats.arrangement.edge_count;
  stats["loops"] = fs.loops.size();
  stats["arcs"] = fs.stats.arcs;
  stats["segments"] = fs.stats.segments;
  stats["edge_count"] = fs.stats.edge_count;
  Json out;
  out["loops"] = loops;
  out["isolated_points"] = pts;
  out["isolated_segments"] = segs;
  out["stats"] = stats;
  if (!fs.diagnostics.empty()) out["diagnostics"] = fs.diagnostics;
  return out;
}

Json grid_json(const OccupancyGrid& grid) {
  std::vector<std::uint8_t> bytes((grid.cells.size() + 7) / 8, 0);
  for (std::size_t k = 0; k < grid.cells.size(); ++k)
    if (grid.cells[k]) bytes[k / 8] |= static_cast<std::uint8_t>(0x80u >> (k % 8));
  Json j;
  j["bbox"] = Json::array({round12(grid.bbox.min.x), round12(grid.bbox.min.y), round12(grid.bbox.max.x),
                           round12(grid.bbox.max.y)});
  j["nx"] = grid.nx;
  j["ny"] = grid.ny;
  j["stable_cells"] = grid.count();
  j["bits"] = base64_encode(bytes);
  return j;
}

OccupancyGrid grid_from_json(const Json& j) {
  OccupancyGrid g;
  const Json& b = j.at("bbox");
  g.bbox = BBox{{b.at(0).get<double>(), b.at(1).get<double>()}, {b.at(2).get<double>(), b.at(3).get<double>()}};
  g.nx = j.at("nx").get<int>();
  g.ny = j.at("ny").get<int>();
  auto bytes = base64_decode(j.at("bits").get<std::string>());
  g.cells.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
  for (std::size_t k = 0; k < g.cells.size(); ++k)
    g.cells[k] = (bytes.at(k / 8) & (0x80u >> (k % 8))) ? 1 : 0;
  return g;
}

Json curves_json(const ContactTracings& tracings) {
  constexpr int kSamples = 128;
  Json curves = Json::array();
  for (const ContactCurve& c : tracings.curves) {
    Json j;
    j["kind"] = to_string(c.kind);
    j["corners"] = c.corners;
    j["walls"] = c.walls;
    j["t0"] = round12(c.t0);
    j["t1"] = round12(c.t1);
    Json rel = Json::array();
    for (auto [lo, hi] : c.relevant) rel.push_back(Json::array({round12(lo), round12(hi)}));
    j["relevant"] = rel;
    Json pts = Json::array();
    Json flags = Json::array();
    for (int k = 0; k < kSamples; ++k) {
      double t = c.t0 + (c.t1 - c.t0) * k / (kSamples - 1);
      pts.push_back(point_json(c.at(t).midpoint));
      flags.push_back(c.is_relevant(t));
    }
    j["points"] = pts;
    j["relevant_flags"] = flags;
    curves.push_back(j);
  }
  Json out;
  out["curves"] = curves;
  out["skipped"] = tracings.skipped;
  out["hypothesis_warnings"] = tracings.hypothesis_warnings;
  return out;
}

Json stats_json(const ArrangementStats& stats) {
  Json j;
  j["n"] = stats.n;
  j["intersecting_pairs"] = stats.intersecting_pairs;
  j["vertex_count"] = stats.vertex_count;
  j["edge_count"] = stats.edge_count;
  return j;
}

Json violations_json(const std::vector<Violation>& violations) {
  Json arr = Json::array();
  for (const Violation& v : violations) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["footholds"] = v.footholds;
    j["message"] = v.message;
    arr.push_back(j);
  }
  return arr;
}

Json pieces_json(const std::vector<TorusPiece>& pieces) {
  constexpr int kSamples = 64;
  Json arr = Json::array();
  for (const TorusPiece& p : pieces) {
    Json j;
    j["i0"] = p.i0;
    j["i"] = p.i;
    j["k"] = p.k;
    j["sign"] = p.sign > 0 ? "+" : "-";
    j["omega"] = p.omega == Omega::One ? 1 : 2;
    j["band"] = to_string(p.band);
    j["u_start"] = round12(p.u_interval.start.value());
    j["u_extent"] = round12(p.u_interval.extent);
    Json samples = Json::array();
    double lo = p.u_interval.start.value();
    for (int k = 0; k < kSamples; ++k) {
      double u = lo + p.u_interval.extent * k / (kSamples - 1);
      samples.push_back(Json::array({round12(u), round12(p.theta(u))}));
    }
    j["samples"] = samples;
    arr.push_back(j);
  }
  return arr;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace spider
