#pragma once

// Rectilinear polygon to disjoint rectangles by horizontal strips.
//
// The polygon is cut along the y of every vertex. Inside one strip the
// vertical edges spanning it pair up left to right into maximal runs, and a
// run with the same x-interval in the strip below is extended instead of
// starting a new rectangle, which keeps the count within the vertex count.

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gapgraph/geometry.hpp"

namespace gapgraph {

class polygon_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace decompose_detail {

struct segment {
  point a, b;  // a < b along the segment's axis
  bool vertical() const { return a.x == b.x; }
};

inline bool segments_meet(const segment& s, const segment& t) {
  return std::max(s.a.x, t.a.x) <= std::min(s.b.x, t.b.x) &&
         std::max(s.a.y, t.a.y) <= std::min(s.b.y, t.b.y);
}

inline std::vector<segment> edges_of(std::span<const point> v) {
  std::vector<segment> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    point a = v[k], b = v[(k + 1) % v.size()];
    if (b.x < a.x || b.y < a.y) std::swap(a, b);
    out.push_back({a, b});
  }
  return out;
}

}  // namespace decompose_detail

/// Twice the signed area (positive for counterclockwise).
inline coord signed_area2(std::span<const point> v) {
  coord s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const point a = v[k], b = v[(k + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

/// Throws polygon_error unless the vertices describe a simple rectilinear
/// polygon whose edges alternate between horizontal and vertical.
inline void validate_polygon(std::span<const point> v) {
  using namespace decompose_detail;
  if (v.size() < 4 || v.size() % 2 != 0)
    throw polygon_error("rectilinear polygon needs an even number (>= 4) of vertices");
  const auto edges = edges_of(v);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (e.a == e.b) throw polygon_error("repeated vertex " + std::to_string(k));
    if (e.a.x != e.b.x && e.a.y != e.b.y) throw polygon_error("edge " + std::to_string(k) + " is not axis-aligned");
    if (e.vertical() == edges[(k + 1) % edges.size()].vertical())
      throw polygon_error("edges " + std::to_string(k) + " and " + std::to_string((k + 1) % edges.size()) +
                          " do not alternate between horizontal and vertical");
  }
  const std::size_t n = edges.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing vertex
      if (segments_meet(edges[i], edges[j]))
        throw polygon_error("self-intersection between edges " + std::to_string(i) + " and " +
                            std::to_string(j));
    }
}

/// Disjoint rectangles whose union is the closed polygon, sorted by (y1, x1).
/// Either orientation is accepted.
inline std::vector<rect> decompose(std::span<const point> v) {
  using namespace decompose_detail;
  validate_polygon(v);
  std::vector<segment> verticals;
  std::vector<coord> ys;
  for (const auto& e : edges_of(v)) {
    if (e.vertical()) verticals.push_back(e);
    ys.push_back(e.a.y);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<rect> out;
  std::map<std::pair<coord, coord>, coord> open;  // run -> bottom y
  std::vector<coord> xs;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    const coord lo = ys[k], hi = ys[k + 1];
    xs.clear();
    for (const auto& e : verticals)
      if (e.a.y <= lo && hi <= e.b.y) xs.push_back(e.a.x);
    std::sort(xs.begin(), xs.end());
    std::map<std::pair<coord, coord>, coord> next;
    for (std::size_t q = 0; q + 1 < xs.size(); q += 2) {
      const std::pair run{xs[q], xs[q + 1]};
      const auto it = open.find(run);
      next.emplace(run, it == open.end() ? lo : it->second);
    }
    for (const auto& [run, bottom] : open)
      if (!next.contains(run)) out.push_back({run.first, bottom, run.second, lo});
    open = std::move(next);
  }
  for (const auto& [run, bottom] : open) out.push_back({run.first, bottom, run.second, ys.back()});
  std::sort(out.begin(), out.end(), [](const rect& a, const rect& b) {
    return a.y1 != b.y1 ? a.y1 < b.y1 : a.x1 < b.x1;
  });
  return out;
}

/// Closed point-in-polygon test (boundary counts as inside).
inline bool polygon_contains(std::span<const point> v, point p) {
  using namespace decompose_detail;
  bool inside = false;
  for (const auto& e : edges_of(v)) {
    if (segments_meet(e, {p, p})) return true;
    // crossings of the ray to the right with vertical edges, half-open in y
    if (e.vertical() && e.a.x > p.x && e.a.y <= p.y && p.y < e.b.y) inside = !inside;
  }
  return inside;
}

using world_item = std::variant<external_rect, std::vector<point>>;

struct ingested_world {
  std::vector<obstacle> obstacles;
  std::vector<std::size_t> source;  // input record of each obstacle
};

/// Decomposes polygons, doubles coordinates and assigns dense ids in input
/// order. Errors carry the index of the offending record.
inline ingested_world ingest_world(std::span<const world_item> items) {
  ingested_world w;
  auto push = [&](std::size_t k, const rect& r) {
    w.obstacles.push_back({w.obstacles.size(), {r.x1 * kUnitScale, r.y1 * kUnitScale,
                                                r.x2 * kUnitScale, r.y2 * kUnitScale}});
    w.source.push_back(k);
  };
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (const auto* r = std::get_if<external_rect>(&items[k])) {
      if (!(r->x1 < r->x2 && r->y1 < r->y2))
        throw input_error(k, "record " + std::to_string(k) + ": degenerate extent");
      push(k, {r->x1, r->y1, r->x2, r->y2});
      continue;
    }
    try {
      for (const auto& r : decompose(std::get<std::vector<point>>(items[k]))) push(k, r);
    } catch (const polygon_error& e) {
      throw input_error(k, "record " + std::to_string(k) + ": " + e.what());
    }
  }
  return w;
}

}  // namespace gapgraph
