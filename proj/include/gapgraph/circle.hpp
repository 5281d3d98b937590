#pragma once

// Gabriel graph of equal-radius circular obstacles.
//
// With a shared obstacle radius r, a robot of radius q among the circles is
// equivalent to a robot of radius q + 2r among their centres, so the
// relevant constraints are exactly the Gabriel edges of the centres. The
// construction is the naive cubic one with exact integer predicates.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapgraph/geometry.hpp"

namespace gapgraph {

/// Effective robot radius after folding the obstacle radius into it. Works
/// for any exact arithmetic type (integers, boost::rational).
template <typename T>
T fold_radius(T q, T r) {
  if (!(q > T(0)) || r < T(0)) throw std::invalid_argument("fold_radius: need q > 0 and r >= 0");
  return q + T(2) * r;
}

using wide = __int128;

inline wide squared_distance(point a, point b) {
  const wide dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Is c strictly inside the disc with diameter ab? Compares |a + b - 2c|^2
/// with |a - b|^2, i.e. the midpoint test scaled by four.
inline bool in_diametral_disc(point a, point b, point c) {
  const wide mx = static_cast<wide>(a.x) + b.x - 2 * static_cast<wide>(c.x);
  const wide my = static_cast<wide>(a.y) + b.y - 2 * static_cast<wide>(c.y);
  return mx * mx + my * my < squared_distance(a, b);
}

struct circle_edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  wide capacity = 0;  // squared centre distance
  friend bool operator==(const circle_edge&, const circle_edge&) = default;
};

struct circle_rejection {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t witness = 0;  // first centre found inside the diametral disc
};

struct circle_graph {
  std::vector<circle_edge> edges;  // sorted by (i, j)
  std::vector<circle_rejection> rejected;
};

inline circle_graph gabriel_edges(std::span<const point> centers) {
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      if (centers[a] == centers[b])
        throw std::invalid_argument("duplicate centres " + std::to_string(a) + " and " + std::to_string(b));
  circle_graph g;
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      std::optional<std::size_t> witness;
      for (std::size_t k = 0; k < centers.size() && !witness; ++k)
        if (k != a && k != b && in_diametral_disc(centers[a], centers[b], centers[k])) witness = k;
      if (witness)
        g.rejected.push_back({a, b, *witness});
      else
        g.edges.push_back({a, b, squared_distance(centers[a], centers[b])});
    }
  return g;
}

}  // namespace gapgraph
