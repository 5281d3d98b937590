#pragma once

// SVG 1.1 rendering of an index (regions, obstacles, sealed thin edges,
// optional pathways) and of a circle-world Gabriel graph. Output depends only
// on the input, so renders can serve as golden files.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "gapgraph/circle.hpp"
#include "gapgraph/query.hpp"

namespace gapgraph {

struct render_options {
  bool regions = true;
  bool edges = true;
  bool pathways = false;
  double width = 800.0;  // pixels; height follows the aspect ratio
};

namespace svg_detail {

/// Distinct, stable pastel colour per region id (golden-angle hue walk).
inline std::string region_color(std::size_t id) {
  const int hue = static_cast<int>((id * 137) % 360);
  const int light = 78 + static_cast<int>(id % 3) * 5;
  return "hsl(" + std::to_string(hue) + ",60%," + std::to_string(light) + "%)";
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

/// Maps internal coordinates to pixels with y pointing up.
struct frame {
  double x0, y0, scale, height;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return height - (y - y0) * scale; }
};

/// Coordinate span of a run of doubled-grid cells.
inline std::pair<coord, coord> span_of(const doubled_axis& a, int lo, int hi) {
  const auto& v = a.lines();
  return {v[static_cast<std::size_t>(lo / 2)], v[static_cast<std::size_t>((hi + 1) / 2)]};
}

inline void open_svg(std::ostream& out, double w, double h) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
}

inline void rect_el(std::ostream& out, const frame& f, double x1, double y1, double x2, double y2,
                    const std::string& attrs) {
  out << "<rect x=\"" << num(f.px(x1)) << "\" y=\"" << num(f.py(y2)) << "\" width=\"" << num((x2 - x1) * f.scale)
      << "\" height=\"" << num((y2 - y1) * f.scale) << "\" " << attrs << "/>\n";
}

}  // namespace svg_detail

inline void render_index(std::ostream& out, const feasibility_index& ix, const render_options& opt = {}) {
  using namespace svg_detail;
  const auto& p = ix.partition();
  const auto& xs = p.xs().lines();
  const auto& ys = p.ys().lines();
  const double w = static_cast<double>(xs.back() - xs.front());
  const double h = static_cast<double>(ys.back() - ys.front());
  const double scale = opt.width / std::max(w, 1.0);
  const frame f{static_cast<double>(xs.front()), static_cast<double>(ys.front()), scale, h * scale};
  open_svg(out, w * scale, h * scale);
  out << "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\" "
         "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#c0392b\" "
         "stroke-width=\"2\"/></pattern></defs>\n";
  out << "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" << num(w * scale) << "\" height=\"" << num(h * scale)
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (opt.regions) {
    out << "<g class=\"regions\" stroke=\"none\">\n";
    for (const auto& s : p.strips()) {
      if (s.region == 0) continue;  // outer face stays blank
      const auto [x1, x2] = span_of(p.xs(), s.cells.col_lo, s.cells.col_hi);
      const auto [y1, y2] = span_of(p.ys(), s.cells.row_lo, s.cells.row_hi);
      if (x1 == x2 || y1 == y2) continue;
      rect_el(out, f, x1, y1, x2, y2, "fill=\"" + region_color(s.region) + "\" data-region=\"" + std::to_string(s.region) + "\"");
    }
    out << "</g>\n";
  }
  out << "<g class=\"obstacles\" fill=\"#34495e\" stroke=\"#1c2833\" stroke-width=\"1\">\n";
  for (const auto& o : ix.obstacles())
    rect_el(out, f, o.box.x1, o.box.y1, o.box.x2, o.box.y2, "data-id=\"" + std::to_string(o.id) + "\"");
  out << "</g>\n";
  if (opt.edges) {
    out << "<g class=\"edges\">\n";
    for (const auto& e : ix.edges()) {
      if (!e.passable()) continue;
      const auto& r = e.edge_rect;
      rect_el(out, f, r.x1, r.y1, r.x2, r.y2, "fill=\"url(#hatch)\" fill-opacity=\"0.5\" stroke=\"none\"");
      for (std::size_t k = 0; k < e.seal.count; ++k) {
        const auto& s = e.seal.parts[k];
        out << "<line x1=\"" << num(f.px(s.x1)) << "\" y1=\"" << num(f.py(s.y1)) << "\" x2=\"" << num(f.px(s.x2))
            << "\" y2=\"" << num(f.py(s.y2)) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
      }
    }
    out << "</g>\n";
  }
  if (opt.pathways) {
    out << "<g class=\"pathways\" fill=\"none\" stroke=\"#2980b9\" stroke-dasharray=\"4 3\">\n";
    for (const auto& e : ix.edges())
      if (e.passable()) rect_el(out, f, e.pathway.x1, e.pathway.y1, e.pathway.x2, e.pathway.y2, "");
    out << "</g>\n";
  }
  out << "</svg>\n";
}

/// Centres, optional obstacle discs of radius r, and the Gabriel edges.
inline void render_circles(std::ostream& out, std::span<const point> centers, const circle_graph& g, coord radius,
                           double width = 800.0) {
  using namespace svg_detail;
  coord x1 = 0, y1 = 0, x2 = 1, y2 = 1;
  if (!centers.empty()) {
    x1 = x2 = centers[0].x;
    y1 = y2 = centers[0].y;
  }
  for (const auto& c : centers) {
    x1 = std::min(x1, c.x); x2 = std::max(x2, c.x);
    y1 = std::min(y1, c.y); y2 = std::max(y2, c.y);
  }
  const coord margin = radius + 1 + (x2 - x1 + y2 - y1) / 20;
  x1 -= margin; y1 -= margin; x2 += margin; y2 += margin;
  const double scale = width / static_cast<double>(x2 - x1);
  const double h = static_cast<double>(y2 - y1) * scale;
  const frame f{static_cast<double>(x1), static_cast<double>(y1), scale, h};
  open_svg(out, width, h);
  if (radius > 0) {
    out << "<g class=\"discs\" fill=\"#d5dbdb\" stroke=\"#7f8c8d\">\n";
    for (const auto& c : centers)
      out << "<circle cx=\"" << num(f.px(c.x)) << "\" cy=\"" << num(f.py(c.y)) << "\" r=\"" << num(radius * scale) << "\"/>\n";
    out << "</g>\n";
  }
  out << "<g class=\"edges\" stroke=\"#c0392b\" stroke-width=\"1.5\">\n";
  for (const auto& e : g.edges)
    out << "<line x1=\"" << num(f.px(centers[e.i].x)) << "\" y1=\"" << num(f.py(centers[e.i].y)) << "\" x2=\""
        << num(f.px(centers[e.j].x)) << "\" y2=\"" << num(f.py(centers[e.j].y)) << "\"/>\n";
  out << "</g>\n<g class=\"centers\" fill=\"#1c2833\">\n";
  for (const auto& c : centers)
    out << "<circle cx=\"" << num(f.px(c.x)) << "\" cy=\"" << num(f.py(c.y)) << "\" r=\"3\"/>\n";
  out << "</g>\n</svg>\n";
}

}  // namespace gapgraph
