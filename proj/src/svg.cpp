#include "spider/svg.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace spider {

namespace {

constexpr double kCanvas = 800.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

class Canvas {
 public:
  explicit Canvas(const BBox& box) : box_(box), scale_(kCanvas / std::max(box.width(), box.height())) {}

  double sx(double x) const { return (x - box_.min.x) * scale_; }
  double sy(double y) const { return (box_.max.y - y) * scale_; }
  double len(double d) const { return d * scale_; }
  std::string xy(Point2 p) const { return num(sx(p.x)) + " " + num(sy(p.y)); }
  double width() const { return len(box_.width()); }
  double height() const { return len(box_.height()); }

 private:
  BBox box_;
  double scale_;
};

void grid_layer(std::ostream& out, const Canvas& cv, const OccupancyGrid& g) {
  double cw = g.bbox.width() / g.nx, ch = g.bbox.height() / g.ny;
  out << "<g id=\"grid\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"none\">\n";
  for (int iy = 0; iy < g.ny; ++iy) {
    std::string d;
    for (int ix = 0; ix < g.nx;) {
      if (!g.at(ix, iy)) {
        ++ix;
        continue;
      }
      int start = ix;
      while (ix < g.nx && g.at(ix, iy)) ++ix;
      Point2 top_left{g.bbox.min.x + start * cw, g.bbox.min.y + (iy + 1) * ch};
      d += "M" + cv.xy(top_left) + " h" + num(cv.len((ix - start) * cw)) + " v" + num(cv.len(ch)) + " h" +
           num(-cv.len((ix - start) * cw)) + " z ";
    }
    if (!d.empty()) {
      d.pop_back();
      out << "<path d=\"" << d << "\"/>\n";
    }
  }
  out << "</g>\n";
}

void freespace_layer(std::ostream& out, const Canvas& cv, const FreeSpace& fs, const Scene& scene) {
  out << "<g id=\"freespace\" fill=\"#fdd49e\" stroke=\"#d7301f\" stroke-width=\"1.5\">\n";
  for (const auto& loop : fs.loops) {
    std::string d = "M" + cv.xy(edge_start(loop.front(), scene));
    for (const auto& e : loop) {
      Point2 end = edge_end(e, scene);
      if (auto* a = std::get_if<ArcEdge>(&e)) {
        // World ccw is screen clockwise, which is SVG sweep-flag 1.
        std::string r = num(cv.len(scene.R));
        d += " A" + r + " " + r + " 0 " + (a->interval.extent > kPi ? "1" : "0") + " 1 " + cv.xy(end);
      } else {
        d += " L" + cv.xy(end);
      }
    }
    out << "<path d=\"" << d << " Z\"/>\n";
  }
  for (const SegEdge& s : fs.isolated_segments)
    out << "<line x1=\"" << num(cv.sx(segment_point(s, scene, s.t0).x)) << "\" y1=\""
        << num(cv.sy(segment_point(s, scene, s.t0).y)) << "\" x2=\"" << num(cv.sx(segment_point(s, scene, s.t1).x))
        << "\" y2=\"" << num(cv.sy(segment_point(s, scene, s.t1).y)) << "\"/>\n";
  for (Point2 p : fs.isolated_points)
    out << "<circle cx=\"" << num(cv.sx(p.x)) << "\" cy=\"" << num(cv.sy(p.y)) << "\" r=\"4\" fill=\"#d7301f\"/>\n";
  out << "</g>\n";
}

void curves_layer(std::ostream& out, const Canvas& cv, const ContactTracings& tr) {
  constexpr int kSamples = 128;
  out << "<g id=\"curves\" fill=\"none\" stroke-width=\"1\">\n";
  for (const ContactCurve& c : tr.curves) {
    std::string d;
    for (int k = 0; k < kSamples; ++k) {
      double t = c.t0 + (c.t1 - c.t0) * k / (kSamples - 1);
      d += (k ? " L" : "M") + cv.xy(c.at(t).midpoint);
    }
    out << "<path class=\"" << to_string(c.kind) << "\" stroke=\"#969696\" stroke-dasharray=\"4 3\" d=\"" << d
        << "\"/>\n";
    for (auto [lo, hi] : c.relevant) {
      std::string r;
      for (int k = 0; k < kSamples; ++k) {
        double t = lo + (hi - lo) * k / (kSamples - 1);
        r += (k ? " L" : "M") + cv.xy(c.at(t).midpoint);
      }
      out << "<path class=\"relevant\" stroke=\"#31a354\" d=\"" << r << "\"/>\n";
    }
  }
  out << "</g>\n";
}

}  // namespace

std::string render_svg(const Scene& scene, const SvgLayers& layers, const BBox& bbox) {
  if (bbox.degenerate()) throw std::invalid_argument("degenerate bounding box");
  Canvas cv(bbox);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(cv.width()) << "\" height=\""
      << num(cv.height()) << "\" viewBox=\"0 0 " << num(cv.width()) << " " << num(cv.height()) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (layers.grid) grid_layer(out, cv, *layers.grid);
  if (layers.freespace) freespace_layer(out, cv, *layers.freespace, scene);

  if (!scene.is_polygonal()) {
    out << "<g id=\"circles\" fill=\"none\" stroke=\"#bdbdbd\" stroke-dasharray=\"3 3\">\n";
    for (Point2 s : scene.footholds)
      out << "<circle cx=\"" << num(cv.sx(s.x)) << "\" cy=\"" << num(cv.sy(s.y)) << "\" r=\"" << num(cv.len(scene.R))
          << "\"/>\n";
    out << "</g>\n";
  }
  if (layers.curves) curves_layer(out, cv, *layers.curves);

  out << "<g id=\"footholds\" fill=\"#252525\" stroke=\"#252525\">\n";
  for (const Polygon& poly : scene.polygons) {
    if (poly.size() == 1) {
      out << "<circle class=\"foothold\" cx=\"" << num(cv.sx(poly[0].x)) << "\" cy=\"" << num(cv.sy(poly[0].y))
          << "\" r=\"3\"/>\n";
      continue;
    }
    std::string pts;
    for (std::size_t k = 0; k < poly.size(); ++k) pts += (k ? " " : "") + num(cv.sx(poly[k].x)) + "," + num(cv.sy(poly[k].y));
    out << "<polygon points=\"" << pts << "\"/>\n";
  }
  for (Point2 s : scene.footholds)
    out << "<circle class=\"foothold\" cx=\"" << num(cv.sx(s.x)) << "\" cy=\"" << num(cv.sy(s.y)) << "\" r=\"3\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace spider
