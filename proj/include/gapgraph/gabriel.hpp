#pragma once

// Generalized Gabriel graph of gap constraints between rectangles.
//
// Candidate pairs come from a left-to-right shadow-region sweep repeated
// under all eight plane symmetries. Each candidate is then kept only if no
// third obstacle meets the open interior of its minimum pathway, which is
// decided offline by a sweep over the obstacles.
//
// Two sweep rules exist. `retiring` retires every claimed obstacle and stops at
// the first active obstacle outside the shadow, so it emits at most n pairs
// per pass; it misses relevant pairs once obstacles touch, overlap or share
// coordinates. `exhaustive` (the default) claims every active obstacle in the
// shadow, lets anchors with equal x1 see the same active set, and keeps an
// obstacle active when its claimant has the same bottom y. It finds every
// relevant pair on the inputs we generate, at the cost of the per-pass bound.

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "gapgraph/geometry.hpp"

namespace gapgraph {

enum class edge_kind { overlap_x, overlap_y, diagonal };
enum class passage_axis { horizontal, vertical };

using id_pair = std::pair<std::size_t, std::size_t>;

/// Zero-width polyline between two obstacles with positive capacity s. Every
/// point on it is within s/2 (L-infinity) of one of them, so no robot larger
/// than s can cross it. Axis pairs get the midline of the corridor; diagonal
/// pairs get a three-part staircase through the midline of the larger gap.
/// `parts[crossing]` is the piece a passing robot crosses.
struct seal_polyline {
  std::array<rect, 3> parts{};
  std::size_t count = 0;
  std::size_t crossing = 0;
  friend bool operator==(const seal_polyline&, const seal_polyline&) = default;
};

inline coord midpoint(coord a, coord b) {
  const coord s = a + b;
  return s >= 0 ? s / 2 : -((-s + 1) / 2);
}

inline seal_polyline seal_of(const rect& a, const rect& b) {
  const auto g = gaps(a, b);
  seal_polyline out;
  if (g.gx <= 0) {
    const coord x = midpoint(std::max(a.x1, b.x1), std::min(a.x2, b.x2));
    out.parts[0] = {x, std::min(a.y2, b.y2), x, std::max(a.y1, b.y1)};
    out.count = 1;
    return out;
  }
  if (g.gy <= 0) {
    const coord y = midpoint(std::max(a.y1, b.y1), std::min(a.y2, b.y2));
    out.parts[0] = {std::min(a.x2, b.x2), y, std::max(a.x1, b.x1), y};
    out.count = 1;
    return out;
  }
  const rect& l = a.x2 <= b.x1 ? a : b;
  const rect& r = a.x2 <= b.x1 ? b : a;
  const bool rising = l.y2 <= r.y1;
  const point cl{l.x2, rising ? l.y2 : l.y1};
  const point cr{r.x1, rising ? r.y1 : r.y2};
  out.count = 3;
  out.crossing = 1;
  if (g.gy >= g.gx) {
    const coord y = midpoint(cl.y, cr.y);
    out.parts[0] = {cl.x, std::min(cl.y, y), cl.x, std::max(cl.y, y)};
    out.parts[1] = {cl.x, y, cr.x, y};
    out.parts[2] = {cr.x, std::min(cr.y, y), cr.x, std::max(cr.y, y)};
  } else {
    const coord x = midpoint(cl.x, cr.x);
    out.parts[0] = {cl.x, cl.y, x, cl.y};
    out.parts[1] = {x, std::min(cl.y, cr.y), x, std::max(cl.y, cr.y)};
    out.parts[2] = {x, cr.y, cr.x, cr.y};
  }
  return out;
}

struct gap_edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  coord capacity = 0;
  rect edge_rect;
  rect pathway;
  edge_kind kind = edge_kind::overlap_x;
  passage_axis passage = passage_axis::horizontal;
  seal_polyline seal;  // empty when capacity is 0

  bool passable() const { return capacity > 0; }
  friend bool operator==(const gap_edge&, const gap_edge&) = default;
};

/// Does `other` lie in the shadow trapezoid to the left of `anchor`? The
/// 45-degree bound binds at the rightmost point of other's bottom side.
inline bool shadow_contains(const rect& anchor, const rect& other) {
  return other.x2 <= anchor.x1 && other.y1 >= anchor.y1 &&
         other.y1 <= anchor.y2 + (anchor.x1 - other.x2);
}

inline bool shadow_contains(const obstacle& anchor, const obstacle& other) {
  return shadow_contains(anchor.box, other.box);
}

enum class sweep_rule { retiring, exhaustive };

namespace gabriel_detail {

inline std::vector<std::size_t> sweep_order(std::span<const obstacle> obstacles) {
  std::vector<std::size_t> order(obstacles.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = obstacles[a].box;
    const auto& rb = obstacles[b].box;
    if (ra.x1 != rb.x1) return ra.x1 < rb.x1;
    if (ra.y1 != rb.y1) return ra.y1 < rb.y1;
    return obstacles[a].id < obstacles[b].id;
  });
  return order;
}

inline std::vector<id_pair> retiring_pass(std::span<const obstacle> obstacles) {
  std::vector<id_pair> out;
  std::set<std::pair<coord, std::size_t>> active;  // (y1, index)
  for (const std::size_t k : sweep_order(obstacles)) {
    const auto& anchor = obstacles[k];
    auto it = active.lower_bound({anchor.box.y1, 0});
    while (it != active.end() && shadow_contains(anchor, obstacles[it->second])) {
      out.emplace_back(anchor.id, obstacles[it->second].id);
      it = active.erase(it);
    }
    active.emplace(anchor.box.y1, k);
  }
  return out;
}

/// Active obstacles in slots ordered by (y1, index); each node keeps the
/// smallest y1 + x2 below it, the quantity the 45-degree bound limits. The
/// slot count must be a power of two.
class shadow_tree {
 public:
  static constexpr coord kEmpty = std::numeric_limits<coord>::max();
  explicit shadow_tree(std::size_t n) : n_(std::max<std::size_t>(n, 1)), key_(2 * n_, kEmpty) {}
  void set(std::size_t slot, coord key) {
    std::size_t k = slot + n_;
    key_[k] = key;
    for (k /= 2; k >= 1; k /= 2) key_[k] = std::min(key_[2 * k], key_[2 * k + 1]);
  }
  /// Calls f(slot) for every slot >= from whose key is <= bound.
  template <typename F>
  void visit(std::size_t from, coord bound, F&& f) const {
    visit(1, 0, n_, from, bound, f);
  }

 private:
  template <typename F>
  void visit(std::size_t node, std::size_t lo, std::size_t hi, std::size_t from, coord bound,
             F& f) const {
    if (hi <= from || key_[node] > bound) return;
    if (hi - lo == 1) {
      f(lo);
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    visit(2 * node, lo, mid, from, bound, f);
    visit(2 * node + 1, mid, hi, from, bound, f);
  }

  std::size_t n_;
  std::vector<coord> key_;
};

inline std::vector<id_pair> exhaustive_pass(std::span<const obstacle> obstacles) {
  const std::size_t n = obstacles.size();
  std::vector<std::size_t> by_y(n);
  for (std::size_t k = 0; k < n; ++k) by_y[k] = k;
  std::sort(by_y.begin(), by_y.end(), [&](std::size_t a, std::size_t b) {
    return obstacles[a].box.y1 != obstacles[b].box.y1 ? obstacles[a].box.y1 < obstacles[b].box.y1
                                                      : a < b;
  });
  std::vector<coord> slot_y(n);
  std::vector<std::size_t> slot_of(n);
  for (std::size_t s = 0; s < n; ++s) {
    slot_y[s] = obstacles[by_y[s]].box.y1;
    slot_of[by_y[s]] = s;
  }
  std::size_t width = 1;
  while (width < n) width *= 2;
  shadow_tree tree(width);

  std::vector<id_pair> out;
  std::vector<std::size_t> retire;
  const auto order = sweep_order(obstacles);
  for (std::size_t g = 0; g < order.size();) {
    std::size_t h = g + 1;
    while (h < order.size() && obstacles[order[h]].box.x1 == obstacles[order[g]].box.x1) ++h;
    retire.clear();
    for (std::size_t q = g; q < h; ++q) {
      const auto& anchor = obstacles[order[q]];
      const auto from = static_cast<std::size_t>(
          std::lower_bound(slot_y.begin(), slot_y.end(), anchor.box.y1) - slot_y.begin());
      tree.visit(from, anchor.box.y2 + anchor.box.x1, [&](std::size_t slot) {
        const auto& other = obstacles[by_y[slot]];
        if (!shadow_contains(anchor, other)) return;
        out.emplace_back(anchor.id, other.id);
        if (other.box.y1 != anchor.box.y1) retire.push_back(slot);
      });
    }
    for (const std::size_t slot : retire) tree.set(slot, shadow_tree::kEmpty);
    for (std::size_t q = g; q < h; ++q) {
      const auto& b = obstacles[order[q]].box;
      tree.set(slot_of[order[q]], b.y1 + b.x2);
    }
    g = h;
  }
  return out;
}

}  // namespace gabriel_detail

/// One left-to-right pass over the obstacles, processed by ascending
/// (x1, y1, id). Returns pairs as (anchor id, other id).
inline std::vector<id_pair> shadow_sweep_pass(std::span<const obstacle> obstacles,
                                              sweep_rule rule = sweep_rule::exhaustive) {
  return rule == sweep_rule::retiring ? gabriel_detail::retiring_pass(obstacles)
                                   : gabriel_detail::exhaustive_pass(obstacles);
}

struct candidate_set {
  std::vector<id_pair> pairs;  // canonical (min, max), sorted, unique
  std::array<std::size_t, 8> per_pass{};
};

inline candidate_set build_candidates(std::span<const obstacle> obstacles,
                                      sweep_rule rule = sweep_rule::exhaustive) {
  candidate_set result;
  std::vector<obstacle> transformed(obstacles.begin(), obstacles.end());
  const auto syms = all_symmetries();
  for (std::size_t s = 0; s < syms.size(); ++s) {
    for (std::size_t k = 0; k < obstacles.size(); ++k)
      transformed[k].box = apply_symmetry(obstacles[k].box, syms[s]);
    const auto pass = shadow_sweep_pass(transformed, rule);
    result.per_pass[s] = pass.size();
    for (const auto& [a, b] : pass) result.pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()), result.pairs.end());
  return result;
}

/// Corridor between the obstacles, extended by the capacity s along the
/// passage axis on both sides of the mutual interval. The larger gap is the
/// bottleneck; on a tie the y gap is (horizontal passage). Empty when s == 0.
inline std::optional<rect> minimum_pathway(const rect& a, const rect& b) {
  const auto g = gaps(a, b);
  const coord s = std::max(g.gx, g.gy);
  if (s <= 0) return std::nullopt;
  if (g.gy >= g.gx) {
    return rect{std::max(a.x1, b.x1) - s, std::min(a.y2, b.y2), std::min(a.x2, b.x2) + s,
                std::max(a.y1, b.y1)};
  }
  return rect{std::min(a.x2, b.x2), std::max(a.y1, b.y1) - s, std::max(a.x1, b.x1),
              std::min(a.y2, b.y2) + s};
}

inline std::optional<rect> minimum_pathway(const obstacle& a, const obstacle& b) {
  return minimum_pathway(a.box, b.box);
}

inline gap_edge make_gap_edge(const obstacle& a, const obstacle& b) {
  gap_edge e;
  e.i = std::min(a.id, b.id);
  e.j = std::max(a.id, b.id);
  const auto g = gaps(a, b);
  e.capacity = capacity(a, b);
  e.edge_rect = thin_edge_rect(a, b);
  e.pathway = minimum_pathway(a, b).value_or(e.edge_rect);
  if (g.gx <= 0)
    e.kind = edge_kind::overlap_x;
  else if (g.gy <= 0)
    e.kind = edge_kind::overlap_y;
  else
    e.kind = edge_kind::diagonal;
  e.passage = g.gy >= g.gx ? passage_axis::horizontal : passage_axis::vertical;
  if (e.capacity > 0) e.seal = seal_of(a.box, b.box);
  return e;
}

namespace gabriel_detail {

inline std::vector<coord> compress(std::vector<coord> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline int rank_of(const std::vector<coord>& v, coord c) {
  return static_cast<int>(std::lower_bound(v.begin(), v.end(), c) - v.begin());
}

/// Range add, range max over elementary intervals.
class max_add_tree {
 public:
  explicit max_add_tree(int n) : n_(std::max(n, 1)), mx_(4 * n_, 0), add_(4 * n_, 0) {}
  void add(int l, int r, int v) { if (l < r) add(1, 0, n_, l, r, v); }
  int max(int l, int r) const { return l < r ? max(1, 0, n_, l, r) : 0; }

 private:
  void add(int node, int lo, int hi, int l, int r, int v) {
    if (r <= lo || hi <= l) return;
    if (l <= lo && hi <= r) {
      mx_[node] += v;
      add_[node] += v;
      return;
    }
    const int mid = (lo + hi) / 2;
    add(2 * node, lo, mid, l, r, v);
    add(2 * node + 1, mid, hi, l, r, v);
    mx_[node] = add_[node] + std::max(mx_[2 * node], mx_[2 * node + 1]);
  }
  int max(int node, int lo, int hi, int l, int r) const {
    if (r <= lo || hi <= l) return std::numeric_limits<int>::min();
    if (l <= lo && hi <= r) return mx_[node];
    const int mid = (lo + hi) / 2;
    return add_[node] + std::max(max(2 * node, lo, mid, l, r), max(2 * node + 1, mid, hi, l, r));
  }
  int n_;
  std::vector<int> mx_, add_;
};

/// counts[q] = #{ p : p.x < X_q and p.y < Y_q }, offline.
inline std::vector<int> dominance_counts(std::vector<std::pair<coord, coord>> pts,
                                         const std::vector<std::pair<coord, coord>>& queries) {
  std::vector<coord> ys;
  ys.reserve(pts.size());
  for (const auto& p : pts) ys.push_back(p.second);
  ys = compress(std::move(ys));
  std::sort(pts.begin(), pts.end());
  std::vector<std::size_t> order(queries.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return queries[a].first < queries[b].first; });
  std::vector<int> fenwick(ys.size() + 1, 0);
  std::vector<int> out(queries.size(), 0);
  std::size_t next = 0;
  for (const std::size_t q : order) {
    while (next < pts.size() && pts[next].first < queries[q].first) {
      for (int k = rank_of(ys, pts[next].second) + 1; k <= static_cast<int>(ys.size()); k += k & -k)
        ++fenwick[k];
      ++next;
    }
    int sum = 0;
    for (int k = rank_of(ys, queries[q].second); k > 0; k -= k & -k) sum += fenwick[k];
    out[q] = sum;
  }
  return out;
}

}  // namespace gabriel_detail

/// hit[q] is true when some obstacle meets the open interior of windows[q].
/// Windows must have positive extent. O((n + m) log(n + m)).
inline std::vector<bool> windows_hit(std::span<const obstacle> obstacles,
                                     std::span<const rect> windows) {
  using namespace gabriel_detail;
  std::vector<bool> hit(windows.size(), false);
  if (obstacles.empty() || windows.empty()) return hit;

  // Obstacles already spanning the window's left side: an x-sweep keeps the
  // active set { x1 <= x < x2 } in a y-coverage tree.
  std::vector<coord> ys;
  for (const auto& o : obstacles) {
    ys.push_back(o.box.y1);
    ys.push_back(o.box.y2);
  }
  for (const auto& w : windows) {
    ys.push_back(w.y1);
    ys.push_back(w.y2);
  }
  ys = compress(std::move(ys));
  struct event {
    coord x;
    int order;  // 0 remove, 1 add, 2 query
    std::size_t idx;
  };
  std::vector<event> events;
  events.reserve(2 * obstacles.size() + windows.size());
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    events.push_back({obstacles[k].box.x1, 1, k});
    events.push_back({obstacles[k].box.x2, 0, k});
  }
  for (std::size_t q = 0; q < windows.size(); ++q) events.push_back({windows[q].x1, 2, q});
  std::sort(events.begin(), events.end(), [](const event& a, const event& b) {
    return a.x != b.x ? a.x < b.x : a.order < b.order;
  });
  max_add_tree cover(static_cast<int>(ys.size()));
  for (const auto& ev : events) {
    if (ev.order == 2) {
      const auto& w = windows[ev.idx];
      if (cover.max(rank_of(ys, w.y1), rank_of(ys, w.y2)) > 0) hit[ev.idx] = true;
    } else {
      const auto& b = obstacles[ev.idx].box;
      cover.add(rank_of(ys, b.y1), rank_of(ys, b.y2), ev.order == 1 ? 1 : -1);
    }
  }

  // Obstacles starting strictly inside the window's x-range, counted by
  // dominance: y1 < w.y2 minus y2 <= w.y1 (the latter implies the former).
  std::vector<std::pair<coord, coord>> low_pts, high_pts;
  for (const auto& o : obstacles) {
    low_pts.emplace_back(o.box.x1, o.box.y1);
    high_pts.emplace_back(o.box.x1, o.box.y2);
  }
  std::vector<std::pair<coord, coord>> q_low, q_high;
  for (const auto& w : windows) {
    q_low.emplace_back(w.x2, w.y2);
    q_low.emplace_back(w.x1 + 1, w.y2);
    q_high.emplace_back(w.x2, w.y1 + 1);
    q_high.emplace_back(w.x1 + 1, w.y1 + 1);
  }
  const auto low = dominance_counts(low_pts, q_low);
  const auto high = dominance_counts(high_pts, q_high);
  for (std::size_t q = 0; q < windows.size(); ++q) {
    const int starting = (low[2 * q] - low[2 * q + 1]) - (high[2 * q] - high[2 * q + 1]);
    if (starting > 0) hit[q] = true;
  }
  return hit;
}

/// Keeps candidates whose minimum pathway is clear. Capacity-0 pairs skip the
/// test and are kept as sealed contacts.
inline std::vector<gap_edge> relevance_filter(std::span<const id_pair> candidates,
                                              std::span<const obstacle> obstacles) {
  std::vector<gap_edge> edges;
  edges.reserve(candidates.size());
  for (const auto& [a, b] : candidates) edges.push_back(make_gap_edge(obstacles[a], obstacles[b]));
  std::vector<rect> windows;
  std::vector<std::size_t> window_edge;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k].passable()) {
      windows.push_back(edges[k].pathway);
      window_edge.push_back(k);
    }
  const auto hit = windows_hit(obstacles, windows);
  std::vector<bool> drop(edges.size(), false);
  for (std::size_t q = 0; q < windows.size(); ++q) drop[window_edge[q]] = hit[q];
  std::vector<gap_edge> kept;
  kept.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (!drop[k]) kept.push_back(edges[k]);
  return kept;
}

struct gabriel_graph {
  std::vector<gap_edge> edges;  // sorted by (i, j)
  candidate_set candidates;
};

/// Obstacle ids must equal their position in the span.
inline gabriel_graph build_gabriel(std::span<const obstacle> obstacles,
                                   sweep_rule rule = sweep_rule::exhaustive) {
  gabriel_graph g;
  g.candidates = build_candidates(obstacles, rule);
  g.edges = relevance_filter(g.candidates.pairs, obstacles);
  return g;
}

}  // namespace gapgraph
