#pragma once

// Exact integer rectangle primitives.
//
// All coordinates inside the library are "half units": values read from a
// world or query file are multiplied by two on ingestion, so that midpoints
// and the d/2 offsets of a robot of side d stay integral.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapgraph {

using coord = std::int64_t;

/// Scale factor from external file units to internal half units.
inline constexpr coord kUnitScale = 2;

struct point {
  coord x = 0;
  coord y = 0;
  friend bool operator==(const point&, const point&) = default;
};

/// Closed axis-aligned rectangle [x1,x2] x [y1,y2]. Degenerate (zero extent)
/// rectangles are allowed for thin edges between touching obstacles.
struct rect {
  coord x1 = 0;
  coord y1 = 0;
  coord x2 = 0;
  coord y2 = 0;

  coord width() const { return x2 - x1; }
  coord height() const { return y2 - y1; }
  bool contains(point p) const { return x1 <= p.x && p.x <= x2 && y1 <= p.y && p.y <= y2; }
  friend bool operator==(const rect&, const rect&) = default;
};

struct obstacle {
  std::size_t id = 0;
  rect box;
  friend bool operator==(const obstacle&, const obstacle&) = default;
};

/// Signed per-axis gaps between two rectangles; negative means the
/// projections overlap by that amount.
struct gap_vector {
  coord gx = 0;
  coord gy = 0;
  friend bool operator==(const gap_vector&, const gap_vector&) = default;
};

class input_error : public std::runtime_error {
 public:
  input_error(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

inline gap_vector gaps(const rect& a, const rect& b) {
  return {std::max(a.x1, b.x1) - std::min(a.x2, b.x2),
          std::max(a.y1, b.y1) - std::min(a.y2, b.y2)};
}

inline gap_vector gaps(const obstacle& a, const obstacle& b) { return gaps(a.box, b.box); }

/// Largest square side that passes between the two obstacles (generalized
/// L-infinity distance), clamped at zero.
inline coord capacity(const rect& a, const rect& b) {
  const auto g = gaps(a, b);
  return std::max<coord>(0, std::max(g.gx, g.gy));
}

inline coord capacity(const obstacle& a, const obstacle& b) { return capacity(a.box, b.box); }

/// Contact or gap rectangle between two obstacles. On each axis the
/// overlapping interval is used when the projections meet, otherwise the gap
/// interval between them.
inline rect thin_edge_rect(const rect& a, const rect& b) {
  auto axis = [](coord a1, coord a2, coord b1, coord b2) {
    const coord lo = std::max(a1, b1);
    const coord hi = std::min(a2, b2);
    return lo <= hi ? std::array<coord, 2>{lo, hi} : std::array<coord, 2>{hi, lo};
  };
  const auto [x1, x2] = axis(a.x1, a.x2, b.x1, b.x2);
  const auto [y1, y2] = axis(a.y1, a.y2, b.y1, b.y2);
  return {x1, y1, x2, y2};
}

inline rect thin_edge_rect(const obstacle& a, const obstacle& b) {
  return thin_edge_rect(a.box, b.box);
}

/// Minkowski expansion by a square of side d (d even in half units).
inline rect expand(const rect& r, coord d) {
  const coord h = d / 2;
  return {r.x1 - h, r.y1 - h, r.x2 + h, r.y2 + h};
}

/// True when the open square of side d centred at p misses the closed rect.
/// Equivalently p is not in the open interior of the expanded rectangle.
inline bool placement_free(point p, coord d, const rect& r) {
  const rect e = expand(r, d);
  if (d == 0) return !r.contains(p);
  return !(e.x1 < p.x && p.x < e.x2 && e.y1 < p.y && p.y < e.y2);
}

inline bool placement_free(point p, coord d, std::span<const obstacle> obstacles) {
  return std::all_of(obstacles.begin(), obstacles.end(),
                     [&](const obstacle& o) { return placement_free(p, d, o.box); });
}

/// True when the open interiors of the two rectangles intersect. Degenerate
/// rectangles have empty interior.
inline bool interiors_intersect(const rect& a, const rect& b) {
  return std::max(a.x1, b.x1) < std::min(a.x2, b.x2) &&
         std::max(a.y1, b.y1) < std::min(a.y2, b.y2);
}

/// One of the eight plane symmetries: mirror (x -> -x) first, then
/// `rotation` quarter turns of (x, y) -> (y, -x).
struct symmetry {
  int rotation = 0;
  bool mirrored = false;
  friend bool operator==(const symmetry&, const symmetry&) = default;
};

inline std::array<symmetry, 8> all_symmetries() {
  std::array<symmetry, 8> out{};
  for (int k = 0; k < 8; ++k) out[k] = {k % 4, k >= 4};
  return out;
}

inline point apply_symmetry(point p, symmetry s) {
  if (s.mirrored) p.x = -p.x;
  for (int k = 0; k < s.rotation; ++k) p = {p.y, -p.x};
  return p;
}

inline rect apply_symmetry(const rect& r, symmetry s) {
  const point a = apply_symmetry(point{r.x1, r.y1}, s);
  const point b = apply_symmetry(point{r.x2, r.y2}, s);
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

inline symmetry inverse_symmetry(symmetry s) {
  // Reflections are involutions; rotations invert by the opposite turn.
  if (s.mirrored) return s;
  return {(4 - s.rotation) % 4, false};
}

/// Sign of the cross product (b - a) x (c - a).
inline int orientation(point a, point b, point c) {
  const __int128 v = static_cast<__int128>(b.x - a.x) * (c.y - a.y) -
                     static_cast<__int128>(b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

/// True when segments pq and rs cross at a single point interior to both.
inline bool segments_properly_cross(point p, point q, point r, point s) {
  const int o1 = orientation(p, q, r), o2 = orientation(p, q, s);
  const int o3 = orientation(r, s, p), o4 = orientation(r, s, q);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

struct external_rect {
  coord x1 = 0;
  coord y1 = 0;
  coord x2 = 0;
  coord y2 = 0;
};

/// Doubles coordinates and assigns dense ids in input order.
inline std::vector<obstacle> ingest_rects(std::span<const external_rect> raw) {
  std::vector<obstacle> out;
  out.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& r = raw[k];
    if (!(r.x1 < r.x2 && r.y1 < r.y2))
      throw input_error(k, "rectangle " + std::to_string(k) + ": degenerate extent");
    out.push_back({k, {r.x1 * kUnitScale, r.y1 * kUnitScale, r.x2 * kUnitScale,
                       r.y2 * kUnitScale}});
  }
  return out;
}

enum class verdict { feasible, infeasible, invalid_start, invalid_goal };

inline const char* to_string(verdict v) {
  switch (v) {
    case verdict::feasible: return "FEASIBLE";
    case verdict::infeasible: return "INFEASIBLE";
    case verdict::invalid_start: return "INVALID_START";
    case verdict::invalid_goal: return "INVALID_GOAL";
  }
  return "?";
}

inline rect bounding_box(std::span<const obstacle> obstacles) {
  if (obstacles.empty()) return {};
  rect b = obstacles.front().box;
  for (const auto& o : obstacles) {
    b.x1 = std::min(b.x1, o.box.x1);
    b.y1 = std::min(b.y1, o.box.y1);
    b.x2 = std::max(b.x2, o.box.x2);
    b.y2 = std::max(b.y2, o.box.y2);
  }
  return b;
}

}  // namespace gapgraph
