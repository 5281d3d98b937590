#pragma once

// Exact reference implementations used to cross-check the index.
//
// oracle_feasible expands every obstacle by d/2 and runs a breadth-first
// search over a doubled compressed grid of the expanded coordinates: even
// indices are coordinate lines, odd indices the open intervals between them.
// A cell is blocked when it lies inside the open interior of an expanded
// obstacle, which is exactly the set of centres where the open robot square
// meets a closed obstacle. Free space is a union of such cells and two free
// cells are path-connected iff they are 4-adjacent through free cells, so the
// search has no discretisation error.

#include <algorithm>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "gapgraph/geometry.hpp"

namespace gapgraph {

namespace oracle_detail {

inline std::vector<coord> sorted_unique(std::vector<coord> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline int line_index(const std::vector<coord>& xs, coord c) {
  return 2 * static_cast<int>(std::lower_bound(xs.begin(), xs.end(), c) - xs.begin());
}

/// Swept area of the largest robot that fits between a and b, written out
/// from the definition rather than shared with the builder: the corridor
/// between the two, lengthened by one robot side past both ends of the
/// mutual interval. Equal gaps pass horizontally.
inline std::optional<rect> pathway(const rect& a, const rect& b) {
  const coord lo_x = std::max(a.x1, b.x1), hi_x = std::min(a.x2, b.x2);
  const coord lo_y = std::max(a.y1, b.y1), hi_y = std::min(a.y2, b.y2);
  const coord side = std::max(lo_x - hi_x, lo_y - hi_y);
  if (side <= 0) return std::nullopt;
  if (lo_y - hi_y >= lo_x - hi_x) return rect{lo_x - side, hi_y, hi_x + side, lo_y};
  return rect{hi_x, lo_y - side, lo_x, hi_y + side};
}

/// Open interiors meet.
inline bool overlaps(const rect& p, const rect& o) {
  return o.x1 < p.x2 && p.x1 < o.x2 && o.y1 < p.y2 && p.y1 < o.y2;
}

}  // namespace oracle_detail

/// Blocked/free grid of the configuration space for one robot size.
class oracle_grid {
 public:
  oracle_grid(std::span<const obstacle> obstacles, coord d, std::span<const point> extra_points,
              std::span<const coord> extra_xs = {}, std::span<const coord> extra_ys = {}) {
    std::vector<rect> grown;
    grown.reserve(obstacles.size());
    std::vector<coord> xs(extra_xs.begin(), extra_xs.end());
    std::vector<coord> ys(extra_ys.begin(), extra_ys.end());
    for (const auto& o : obstacles) {
      const coord h = d / 2;
      grown.push_back({o.box.x1 - h, o.box.y1 - h, o.box.x2 + h, o.box.y2 + h});
      xs.push_back(grown.back().x1);
      xs.push_back(grown.back().x2);
      ys.push_back(grown.back().y1);
      ys.push_back(grown.back().y2);
    }
    for (const auto& p : extra_points) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
    if (xs.empty()) xs.push_back(0);
    if (ys.empty()) ys.push_back(0);
    // sentinel margin: the outermost ring of cells is always free
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    const coord x_lo = *xmin - 2, x_hi = *xmax + 2, y_lo = *ymin - 2, y_hi = *ymax + 2;
    xs.push_back(x_lo);
    xs.push_back(x_hi);
    ys.push_back(y_lo);
    ys.push_back(y_hi);
    xs_ = oracle_detail::sorted_unique(std::move(xs));
    ys_ = oracle_detail::sorted_unique(std::move(ys));
    nx_ = 2 * static_cast<int>(xs_.size()) - 1;
    ny_ = 2 * static_cast<int>(ys_.size()) - 1;

    // 2-D difference array over cells strictly inside each expanded obstacle.
    std::vector<int> diff(static_cast<std::size_t>(nx_ + 1) * (ny_ + 1), 0);
    auto at = [&](int i, int j) -> int& { return diff[static_cast<std::size_t>(i) * (ny_ + 1) + j]; };
    for (const auto& g : grown) {
      if (g.x1 >= g.x2 || g.y1 >= g.y2) continue;
      const int i0 = oracle_detail::line_index(xs_, g.x1) + 1;
      const int i1 = oracle_detail::line_index(xs_, g.x2);  // exclusive
      const int j0 = oracle_detail::line_index(ys_, g.y1) + 1;
      const int j1 = oracle_detail::line_index(ys_, g.y2);
      at(i0, j0) += 1;
      at(i1, j0) -= 1;
      at(i0, j1) -= 1;
      at(i1, j1) += 1;
    }
    blocked_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
    for (int i = 0; i <= nx_; ++i)
      for (int j = 0; j <= ny_; ++j) {
        if (i > 0) at(i, j) += at(i - 1, j);
        if (j > 0) at(i, j) += at(i, j - 1);
        if (i > 0 && j > 0) at(i, j) -= at(i - 1, j - 1);
      }
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) blocked_[cell(i, j)] = at(i, j) > 0 ? 1 : 0;
  }

  int nx() const { return nx_; }
  const std::vector<coord>& xs() const { return xs_; }
  const std::vector<coord>& ys() const { return ys_; }
  int ny() const { return ny_; }

  /// Cell of a point whose coordinates are grid lines.
  std::pair<int, int> cell_of(point p) const {
    return {oracle_detail::line_index(xs_, p.x), oracle_detail::line_index(ys_, p.y)};
  }

  bool blocked(int i, int j) const { return blocked_[cell(i, j)] != 0; }

  /// Connected-component label for every free cell (-1 for blocked).
  std::vector<int> components() const {
    std::vector<int> comp(blocked_.size(), -1);
    int next = 0;
    std::vector<int> stack;
    for (int start = 0; start < static_cast<int>(blocked_.size()); ++start) {
      if (blocked_[start] || comp[start] >= 0) continue;
      comp[start] = next;
      stack.push_back(start);
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        const int i = c / ny_, j = c % ny_;
        const int nbr[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
        for (const auto& n : nbr) {
          if (n[0] < 0 || n[0] >= nx_ || n[1] < 0 || n[1] >= ny_) continue;
          const int k = cell(n[0], n[1]);
          if (blocked_[k] || comp[k] >= 0) continue;
          comp[k] = next;
          stack.push_back(k);
        }
      }
      ++next;
    }
    return comp;
  }

  int cell(int i, int j) const { return i * ny_ + j; }

 private:
  std::vector<coord> xs_, ys_;
  int nx_ = 0, ny_ = 0;
  std::vector<unsigned char> blocked_;
};

/// `extra_xs` and `extra_ys` add unused grid lines; verdicts must not change.
inline verdict oracle_feasible(std::span<const obstacle> obstacles, point s, point t, coord d,
                               std::span<const coord> extra_xs = {}, std::span<const coord> extra_ys = {}) {
  const point pts[2] = {s, t};
  const oracle_grid grid(obstacles, d, pts, extra_xs, extra_ys);
  const auto [si, sj] = grid.cell_of(s);
  const auto [ti, tj] = grid.cell_of(t);
  if (grid.blocked(si, sj)) return verdict::invalid_start;
  if (grid.blocked(ti, tj)) return verdict::invalid_goal;
  const int goal = grid.cell(ti, tj);
  std::vector<unsigned char> seen(static_cast<std::size_t>(grid.nx()) * grid.ny(), 0);
  std::deque<int> queue{grid.cell(si, sj)};
  seen[queue.front()] = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    if (c == goal) return verdict::feasible;
    const int i = c / grid.ny(), j = c % grid.ny();
    const int nbr[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
    for (const auto& n : nbr) {
      if (n[0] < 0 || n[0] >= grid.nx() || n[1] < 0 || n[1] >= grid.ny()) continue;
      const int k = grid.cell(n[0], n[1]);
      if (seen[k] || grid.blocked(n[0], n[1])) continue;
      seen[k] = 1;
      queue.push_back(k);
    }
  }
  return verdict::infeasible;
}

/// Every positive-capacity pair whose minimum pathway has no third obstacle
/// in its open interior. O(n^3).
inline std::vector<std::pair<std::size_t, std::size_t>> oracle_relevant_edges(
    std::span<const obstacle> obstacles) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < obstacles.size(); ++a)
    for (std::size_t b = a + 1; b < obstacles.size(); ++b) {
      const auto path = oracle_detail::pathway(obstacles[a].box, obstacles[b].box);
      if (!path) continue;
      bool clear = true;
      for (std::size_t k = 0; k < obstacles.size() && clear; ++k)
        if (k != a && k != b && oracle_detail::overlaps(*path, obstacles[k].box)) clear = false;
      if (clear)
        out.emplace_back(std::min(obstacles[a].id, obstacles[b].id),
                         std::max(obstacles[a].id, obstacles[b].id));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gapgraph
