#pragma once

// Seeded world and query generators. Everything is in external (file) units.
// Draws use raw mt19937_64 output so a seed yields the same world on every
// standard library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapgraph/geometry.hpp"

namespace gapgraph {

enum class world_kind { uniform, cluster, maze };

inline world_kind parse_world_kind(const std::string& s) {
  if (s == "uniform") return world_kind::uniform;
  if (s == "cluster") return world_kind::cluster;
  if (s == "maze") return world_kind::maze;
  throw std::invalid_argument("unknown world kind '" + s + "' (uniform|cluster|maze)");
}

inline const char* to_string(world_kind k) {
  switch (k) {
    case world_kind::uniform: return "uniform";
    case world_kind::cluster: return "cluster";
    case world_kind::maze: return "maze";
  }
  return "?";
}

class seeded_rng {
 public:
  explicit seeded_rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform integer in [lo, hi].
  coord range(coord lo, coord hi) {
    return lo + static_cast<coord>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return range(0, 99) < percent; }

 private:
  std::mt19937_64 eng_;
};

namespace generate_detail {

inline std::vector<external_rect> uniform(std::size_t n, seeded_rng& rng) {
  const coord side = static_cast<coord>(std::ceil(std::sqrt(static_cast<double>(n)) * 6.0)) + 4;
  std::vector<external_rect> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const coord x = rng.range(0, side), y = rng.range(0, side);
    out.push_back({x, y, x + rng.range(1, 5), y + rng.range(1, 5)});
  }
  return out;
}

inline std::vector<external_rect> cluster(std::size_t n, seeded_rng& rng) {
  const coord side = static_cast<coord>(std::ceil(std::sqrt(static_cast<double>(n)) * 7.0)) + 6;
  const std::size_t clusters = std::max<std::size_t>(1, n / 8);
  std::vector<point> centers;
  for (std::size_t c = 0; c < clusters; ++c) centers.push_back({rng.range(0, side), rng.range(0, side)});
  std::vector<external_rect> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const point c = centers[static_cast<std::size_t>(rng.range(0, static_cast<coord>(clusters) - 1))];
    const coord spread = rng.range(2, 6);
    const coord x = c.x + rng.range(-spread, spread), y = c.y + rng.range(-spread, spread);
    out.push_back({x, y, x + rng.range(1, 3), y + rng.range(1, 3)});
  }
  return out;
}

/// Perfect maze on a grid with irregular cell sizes; walls are unit-thick
/// rectangles that overlap at the corners. Some walls are shortened to open
/// gaps of varying width, and walls are dropped until exactly n remain.
inline std::vector<external_rect> maze(std::size_t n, seeded_rng& rng) {
  int g = 1;
  auto wall_count = [](int s) { return static_cast<std::size_t>(2 * s * (s + 1)); };
  while (wall_count(g) < n) ++g;
  std::vector<coord> xs{0}, ys{0};
  for (int k = 0; k < g; ++k) {
    xs.push_back(xs.back() + rng.range(2, 6));
    ys.push_back(ys.back() + rng.range(2, 6));
  }
  // walls: vertical[i][j] on line x = xs[i] spanning row j; horizontal[i][j]
  // on line y = ys[j] spanning column i
  std::vector<char> vert((g + 1) * g, 1), horiz(g * (g + 1), 1);
  auto v_at = [&](int i, int j) -> char& { return vert[i * g + j]; };
  auto h_at = [&](int i, int j) -> char& { return horiz[i * (g + 1) + j]; };
  std::vector<char> seen(g * g, 0);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  seen[0] = 1;
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    std::vector<int> dirs;
    if (i > 0 && !seen[(i - 1) * g + j]) dirs.push_back(0);
    if (i + 1 < g && !seen[(i + 1) * g + j]) dirs.push_back(1);
    if (j > 0 && !seen[i * g + j - 1]) dirs.push_back(2);
    if (j + 1 < g && !seen[i * g + j + 1]) dirs.push_back(3);
    if (dirs.empty()) {
      stack.pop_back();
      continue;
    }
    const int dir = dirs[static_cast<std::size_t>(rng.range(0, static_cast<coord>(dirs.size()) - 1))];
    int ni = i, nj = j;
    if (dir == 0) { v_at(i, j) = 0; ni = i - 1; }
    if (dir == 1) { v_at(i + 1, j) = 0; ni = i + 1; }
    if (dir == 2) { h_at(i, j) = 0; nj = j - 1; }
    if (dir == 3) { h_at(i, j + 1) = 0; nj = j + 1; }
    seen[ni * g + nj] = 1;
    stack.emplace_back(ni, nj);
  }
  std::vector<external_rect> out;
  for (int i = 0; i <= g; ++i)
    for (int j = 0; j < g; ++j)
      if (v_at(i, j)) out.push_back({xs[i], ys[j], xs[i] + 1, ys[j + 1] + 1});
  for (int i = 0; i < g; ++i)
    for (int j = 0; j <= g; ++j)
      if (h_at(i, j)) out.push_back({xs[i], ys[j], xs[i + 1] + 1, ys[j] + 1});
  for (auto& r : out) {
    if (!rng.chance(20)) continue;
    const bool vertical = r.x2 - r.x1 == 1;
    coord& lo = vertical ? r.y1 : r.x1;
    coord& hi = vertical ? r.y2 : r.x2;
    const coord cut = rng.range(1, std::max<coord>(1, hi - lo - 1));
    if (hi - lo - cut < 1) continue;
    if (rng.chance(50)) lo += cut; else hi -= cut;
  }
  while (out.size() > n) out.erase(out.begin() + rng.range(0, static_cast<coord>(out.size()) - 1));
  // Fill up with interior pillars when the maze came out short.
  while (out.size() < n) {
    const coord x = rng.range(0, xs.back()), y = rng.range(0, ys.back());
    out.push_back({x, y, x + 1, y + 1});
  }
  return out;
}

}  // namespace generate_detail

inline std::vector<external_rect> generate_world(world_kind kind, std::size_t n, std::uint64_t seed) {
  seeded_rng rng(seed);
  switch (kind) {
    case world_kind::uniform: return generate_detail::uniform(n, rng);
    case world_kind::cluster: return generate_detail::cluster(n, rng);
    case world_kind::maze: return generate_detail::maze(n, rng);
  }
  return {};
}

namespace generate_detail {

/// Boundary of a hole-free, pinch-free set of unit cells as a
/// counterclockwise vertex list with collinear runs merged.
inline std::vector<point> trace_cells(const std::set<std::pair<coord, coord>>& cells) {
  std::map<std::pair<coord, coord>, std::pair<coord, coord>> next;  // directed boundary edges
  auto has = [&](coord x, coord y) { return cells.contains({x, y}); };
  for (const auto& [x, y] : cells) {
    if (!has(x, y - 1)) next[{x, y}] = {x + 1, y};
    if (!has(x + 1, y)) next[{x + 1, y}] = {x + 1, y + 1};
    if (!has(x, y + 1)) next[{x + 1, y + 1}] = {x, y + 1};
    if (!has(x - 1, y)) next[{x, y + 1}] = {x, y};
  }
  std::vector<std::pair<coord, coord>> loop;
  auto at = next.begin()->first;
  do {
    loop.push_back(at);
    at = next.at(at);
  } while (at != loop.front());
  std::vector<point> out;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const auto [px, py] = loop[(k + loop.size() - 1) % loop.size()];
    const auto [x, y] = loop[k];
    const auto [nx, ny] = loop[(k + 1) % loop.size()];
    if ((px == x && x == nx) || (py == y && y == ny)) continue;
    out.push_back({x, y});
  }
  return out;
}

/// No holes, and no 2x2 block holding exactly two diagonal cells.
inline bool simple_cells(const std::set<std::pair<coord, coord>>& cells) {
  coord x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  bool first = true;
  for (const auto& [x, y] : cells) {
    if (first) { x1 = x2 = x; y1 = y2 = y; first = false; }
    x1 = std::min(x1, x); x2 = std::max(x2, x);
    y1 = std::min(y1, y); y2 = std::max(y2, y);
  }
  auto has = [&](coord x, coord y) { return cells.contains({x, y}); };
  for (coord x = x1 - 1; x <= x2; ++x)
    for (coord y = y1 - 1; y <= y2; ++y) {
      const bool a = has(x, y), b = has(x + 1, y), c = has(x, y + 1), d = has(x + 1, y + 1);
      if ((a && d && !b && !c) || (b && c && !a && !d)) return false;
    }
  // flood the complement from outside the bounding box
  std::set<std::pair<coord, coord>> outside;
  std::vector<std::pair<coord, coord>> stack{{x1 - 1, y1 - 1}};
  outside.insert(stack.front());
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    const std::pair<coord, coord> nbr[4] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
    for (const auto& n : nbr) {
      if (n.first < x1 - 1 || n.first > x2 + 1 || n.second < y1 - 1 || n.second > y2 + 1) continue;
      if (has(n.first, n.second) || outside.contains(n)) continue;
      outside.insert(n);
      stack.push_back(n);
    }
  }
  const auto box = static_cast<std::size_t>((x2 - x1 + 3) * (y2 - y1 + 3));
  return outside.size() + cells.size() == box;
}

}  // namespace generate_detail

/// Random simple rectilinear polygon with at most max_vertices vertices,
/// counterclockwise, grown from unit cells and then stretched by random
/// column widths and row heights.
inline std::vector<point> generate_polygon(std::size_t max_vertices, seeded_rng& rng) {
  using cellset = std::set<std::pair<coord, coord>>;
  cellset cells{{0, 0}};
  const int attempts = static_cast<int>(rng.range(1, 120));
  for (int a = 0; a < attempts; ++a) {
    const auto base = std::next(cells.begin(), rng.range(0, static_cast<coord>(cells.size()) - 1));
    const int dir = static_cast<int>(rng.range(0, 3));
    const std::pair<coord, coord> add{base->first + (dir == 0) - (dir == 1),
                                      base->second + (dir == 2) - (dir == 3)};
    if (cells.contains(add)) continue;
    cellset grown = cells;
    grown.insert(add);
    if (!generate_detail::simple_cells(grown)) continue;
    if (generate_detail::trace_cells(grown).size() > max_vertices) continue;
    cells = std::move(grown);
  }
  auto v = generate_detail::trace_cells(cells);
  // Stretch: cell line k maps to a strictly increasing random coordinate.
  coord x_lo = v[0].x, x_hi = v[0].x, y_lo = v[0].y, y_hi = v[0].y;
  for (const auto& p : v) {
    x_lo = std::min(x_lo, p.x); x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y); y_hi = std::max(y_hi, p.y);
  }
  std::vector<coord> xs{0}, ys{0};
  for (coord k = x_lo; k < x_hi; ++k) xs.push_back(xs.back() + rng.range(1, 4));
  for (coord k = y_lo; k < y_hi; ++k) ys.push_back(ys.back() + rng.range(1, 4));
  for (auto& p : v) p = {xs[static_cast<std::size_t>(p.x - x_lo)], ys[static_cast<std::size_t>(p.y - y_lo)]};
  return v;
}

/// n distinct random integer points in a square that grows with n.
inline std::vector<point> generate_centers(std::size_t n, std::uint64_t seed) {
  seeded_rng rng(seed);
  const coord side = static_cast<coord>(std::ceil(std::sqrt(static_cast<double>(n)) * 20.0)) + 10;
  std::set<std::pair<coord, coord>> seen;
  std::vector<point> out;
  while (out.size() < n) {
    const point p{rng.range(0, side), rng.range(0, side)};
    if (seen.insert({p.x, p.y}).second) out.push_back(p);
  }
  return out;
}

struct external_query {
  coord sx = 0, sy = 0, tx = 0, ty = 0, d = 1;
};

/// Random queries inside the world's bounding box (plus a margin). Endpoints
/// are re-drawn a few times to favour valid placements; d is in [1, dmax].
template <typename FreeFn>
std::vector<external_query> generate_queries(const std::vector<external_rect>& world, std::size_t k,
                                             coord dmax, std::uint64_t seed, FreeFn&& is_free) {
  seeded_rng rng(seed);
  coord x1 = 0, y1 = 0, x2 = 10, y2 = 10;
  if (!world.empty()) {
    x1 = world[0].x1; y1 = world[0].y1; x2 = world[0].x2; y2 = world[0].y2;
    for (const auto& r : world) {
      x1 = std::min(x1, r.x1); y1 = std::min(y1, r.y1);
      x2 = std::max(x2, r.x2); y2 = std::max(y2, r.y2);
    }
  }
  x1 -= 3; y1 -= 3; x2 += 3; y2 += 3;
  std::vector<external_query> out;
  out.reserve(k);
  for (std::size_t q = 0; q < k; ++q) {
    external_query e;
    e.d = rng.range(1, dmax);
    auto draw = [&](coord& x, coord& y) {
      for (int attempt = 0; attempt < 12; ++attempt) {
        x = rng.range(x1, x2);
        y = rng.range(y1, y2);
        if (is_free(x, y, e.d)) return;
      }
    };
    draw(e.sx, e.sy);
    draw(e.tx, e.ty);
    out.push_back(e);
  }
  return out;
}

}  // namespace gapgraph
