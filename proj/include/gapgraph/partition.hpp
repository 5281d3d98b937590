#pragma once

// Region partition of the plane by obstacles and sealed thin edges.
//
// Coordinates are compressed into a doubled index space: index 2m is the
// line xs[m] and index 2m+1 the open interval (xs[m], xs[m+1]), so zero-width
// thin edges and flush boundaries need no epsilons. A sentinel line beyond
// each extreme keeps the outer ring of cells free.
//
// Free cells are not stored one by one. A column sweep keeps the maximal free
// runs of the current column as "strips" that extend to the right until one
// of their rows changes; 4-adjacent strips of consecutive columns are joined
// in a union-find, and each resulting class is a region.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "gapgraph/gabriel.hpp"
#include "gapgraph/geometry.hpp"

namespace gapgraph {

/// Sorted coordinate lines of one axis and the doubled index space over them.
class doubled_axis {
 public:
  doubled_axis() : lines_{-2, 2} {}
  explicit doubled_axis(std::vector<coord> lines) : lines_(std::move(lines)) {
    std::sort(lines_.begin(), lines_.end());
    lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
    if (lines_.empty()) lines_.push_back(0);
    const coord lo = lines_.front() - 2, hi = lines_.back() + 2;
    lines_.insert(lines_.begin(), lo);
    lines_.push_back(hi);
  }

  /// Axis over exactly these lines, sentinels included; for deserialization.
  static doubled_axis from_lines(std::vector<coord> lines) {
    if (lines.size() < 2 || !std::is_sorted(lines.begin(), lines.end()) ||
        std::adjacent_find(lines.begin(), lines.end()) != lines.end())
      throw std::invalid_argument("axis lines must be strictly increasing, at least two");
    doubled_axis a;
    a.lines_ = std::move(lines);
    return a;
  }

  const std::vector<coord>& lines() const { return lines_; }
  int cells() const { return 2 * static_cast<int>(lines_.size()) - 1; }

  /// Index of the cell holding c; values past the sentinels clamp to the
  /// outermost (free) line.
  int index_of(coord c) const {
    if (c <= lines_.front()) return 0;
    if (c >= lines_.back()) return cells() - 1;
    const auto m = static_cast<int>(std::lower_bound(lines_.begin(), lines_.end(), c) - lines_.begin());
    return lines_[m] == c ? 2 * m : 2 * m - 1;
  }

  /// Index of an existing line; the caller guarantees c is one of them.
  int line_index(coord c) const {
    return 2 * static_cast<int>(std::lower_bound(lines_.begin(), lines_.end(), c) - lines_.begin());
  }

  /// First and last cells meeting the open interval (a, b), clamped.
  std::pair<int, int> open_span(coord a, coord b) const {
    int lo = 0, hi = cells() - 1;
    if (a >= lines_.front()) {
      const auto m = static_cast<int>(std::upper_bound(lines_.begin(), lines_.end(), a) - lines_.begin()) - 1;
      lo = std::min(2 * m + 1, cells() - 1);
    }
    if (b <= lines_.back()) {
      const auto m = static_cast<int>(std::lower_bound(lines_.begin(), lines_.end(), b) - lines_.begin());
      hi = std::max(2 * m - 1, 0);
    }
    return {lo, hi};
  }

 private:
  std::vector<coord> lines_;
};

/// Inclusive box in doubled index space.
struct index_box {
  int col_lo = 0, col_hi = 0, row_lo = 0, row_hi = 0;
  friend bool operator==(const index_box&, const index_box&) = default;
};

/// One straight piece (or contact rectangle) of a sealed gap edge.
struct seal {
  index_box cells;
  std::uint32_t edge = 0;
  friend bool operator==(const seal&, const seal&) = default;
};

struct strip {
  index_box cells;
  std::uint32_t region = 0;
  friend bool operator==(const strip&, const strip&) = default;
};

enum class label_kind { region, wall, sealed };

struct cell_label {
  label_kind kind = label_kind::region;
  std::size_t id = 0;  // region id, obstacle id or edge index
  friend bool operator==(const cell_label&, const cell_label&) = default;
};

namespace partition_detail {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;
using ipoint = bg::model::point<int, 2, bg::cs::cartesian>;
using ibox = bg::model::box<ipoint>;
using entry = std::pair<ibox, std::uint32_t>;
using tree = bgi::rtree<entry, bgi::rstar<16>>;

inline ibox to_ibox(const index_box& b) { return {{b.col_lo, b.row_lo}, {b.col_hi, b.row_hi}}; }

/// Range add with first-zero / first-positive search over non-negative counts.
class coverage_tree {
 public:
  explicit coverage_tree(int n) : n_(std::max(n, 1)), mn_(4 * n_, 0), mx_(4 * n_, 0), lz_(4 * n_, 0) {}

  void add(int l, int r, int v) { add(1, 0, n_ - 1, l, r, v); }
  int first_zero(int from, int to) const { return find(1, 0, n_ - 1, from, to, 0, true); }
  int first_positive(int from, int to) const { return find(1, 0, n_ - 1, from, to, 0, false); }

 private:
  void add(int node, int lo, int hi, int l, int r, int v) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      lz_[node] += v;
      mn_[node] += v;
      mx_[node] += v;
      return;
    }
    const int mid = (lo + hi) / 2;
    add(2 * node, lo, mid, l, r, v);
    add(2 * node + 1, mid + 1, hi, l, r, v);
    mn_[node] = lz_[node] + std::min(mn_[2 * node], mn_[2 * node + 1]);
    mx_[node] = lz_[node] + std::max(mx_[2 * node], mx_[2 * node + 1]);
  }

  int find(int node, int lo, int hi, int l, int r, int acc, bool zero) const {
    if (r < lo || hi < l) return -1;
    if (zero ? acc + mn_[node] > 0 : acc + mx_[node] <= 0) return -1;
    if (lo == hi) return lo;
    const int mid = (lo + hi) / 2;
    const int left = find(2 * node, lo, mid, l, r, acc + lz_[node], zero);
    if (left >= 0) return left;
    return find(2 * node + 1, mid + 1, hi, l, r, acc + lz_[node], zero);
  }

  int n_;
  std::vector<int> mn_, mx_, lz_;
};

class union_find {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // smaller id stays root
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace partition_detail

class region_partition {
 public:
  region_partition() = default;

  /// Walls are the obstacles. A passable gap edge is sealed along its
  /// zero-width polyline; a capacity-0 contact keeps its closed rectangle.
  static region_partition build(std::span<const obstacle> obstacles,
                                std::span<const gap_edge> edges) {
    region_partition p;
    std::vector<coord> xs, ys;
    auto add = [&](const rect& r) {
      xs.insert(xs.end(), {r.x1, r.x2});
      ys.insert(ys.end(), {r.y1, r.y2});
    };
    for (const auto& o : obstacles) add(o.box);
    for (const auto& e : edges) {
      if (!e.passable()) add(e.edge_rect);
      for (std::size_t k = 0; k < e.seal.count; ++k) add(e.seal.parts[k]);
    }
    p.xs_ = doubled_axis(std::move(xs));
    p.ys_ = doubled_axis(std::move(ys));
    for (const auto& o : obstacles) p.walls_.push_back(p.boxed(o.box));
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      if (!e.passable()) p.seals_.push_back({p.boxed(e.edge_rect), static_cast<std::uint32_t>(k)});
      for (std::size_t q = 0; q < e.seal.count; ++q)
        p.seals_.push_back({p.boxed(e.seal.parts[q]), static_cast<std::uint32_t>(k)});
    }
    p.sweep();
    p.index();
    return p;
  }

  /// Rebuilds lookup structures from serialized parts.
  static region_partition restore(doubled_axis xs, doubled_axis ys, std::vector<index_box> walls,
                                  std::vector<seal> seals, std::vector<strip> strips,
                                  std::size_t region_count) {
    region_partition p;
    p.xs_ = std::move(xs);
    p.ys_ = std::move(ys);
    p.walls_ = std::move(walls);
    p.seals_ = std::move(seals);
    p.strips_ = std::move(strips);
    p.region_count_ = region_count;
    p.index();
    return p;
  }

  const doubled_axis& xs() const { return xs_; }
  const doubled_axis& ys() const { return ys_; }
  std::size_t region_count() const { return region_count_; }
  const std::vector<strip>& strips() const { return strips_; }
  const std::vector<index_box>& walls() const { return walls_; }
  const std::vector<seal>& seals() const { return seals_; }

  std::pair<int, int> cell_of(point p) const { return {xs_.index_of(p.x), ys_.index_of(p.y)}; }

  cell_label label(int col, int row) const {
    namespace bgi = partition_detail::bgi;
    const partition_detail::ipoint q{col, row};
    std::optional<std::uint32_t> wall, edge;
    for (auto it = wall_tree_.qbegin(bgi::intersects(q)); it != wall_tree_.qend(); ++it)
      if (!wall || it->second < *wall) wall = it->second;
    if (wall) return {label_kind::wall, *wall};
    for (auto it = seal_tree_.qbegin(bgi::intersects(q)); it != seal_tree_.qend(); ++it)
      if (!edge || seals_[it->second].edge < *edge) edge = seals_[it->second].edge;
    if (edge) return {label_kind::sealed, *edge};
    for (auto it = strip_tree_.qbegin(bgi::intersects(q)); it != strip_tree_.qend(); ++it)
      return {label_kind::region, strips_[it->second].region};
    return {label_kind::wall, std::numeric_limits<std::size_t>::max()};  // unreachable when consistent
  }

  /// O(log n) expected through the R-trees.
  cell_label locate(point p) const {
    const auto [c, r] = cell_of(p);
    return label(c, r);
  }

  /// Region whose strip meets the box and lies nearest to (col, row).
  std::optional<std::uint32_t> nearest_region(const index_box& box, int col, int row) const {
    namespace bgi = partition_detail::bgi;
    std::optional<std::uint32_t> out;
    for (auto it = strip_tree_.qbegin(bgi::intersects(partition_detail::to_ibox(box)) &&
                                      bgi::nearest(partition_detail::ipoint{col, row}, 1));
         it != strip_tree_.qend(); ++it)
      out = strips_[it->second].region;
    return out;
  }

  /// Indices of the walls, seals or strips meeting a box of cells.
  std::vector<std::uint32_t> walls_in(const index_box& b) const { return hits(wall_tree_, b); }
  std::vector<std::uint32_t> seals_in(const index_box& b) const { return hits(seal_tree_, b); }
  std::vector<std::uint32_t> strips_in(const index_box& b) const { return hits(strip_tree_, b); }

  index_box boxed(const rect& r) const {
    return {xs_.line_index(r.x1), xs_.line_index(r.x2), ys_.line_index(r.y1), ys_.line_index(r.y2)};
  }

  /// Full label grid, column-major ([col * rows + row]); for small worlds.
  std::vector<cell_label> materialize() const {
    const int nc = xs_.cells(), nr = ys_.cells();
    std::vector<cell_label> grid(static_cast<std::size_t>(nc) * nr);
    for (const auto& s : strips_)
      for (int c = s.cells.col_lo; c <= s.cells.col_hi; ++c)
        for (int r = s.cells.row_lo; r <= s.cells.row_hi; ++r)
          grid[static_cast<std::size_t>(c) * nr + r] = {label_kind::region, s.region};
    auto paint = [&](const index_box& b, label_kind k, std::size_t id) {
      for (int c = b.col_lo; c <= b.col_hi; ++c)
        for (int r = b.row_lo; r <= b.row_hi; ++r) {
          auto& cell = grid[static_cast<std::size_t>(c) * nr + r];
          if (cell.kind != label_kind::region && cell.kind != k) continue;
          if (cell.kind == k && cell.id <= id) continue;
          cell = {k, id};
        }
    };
    for (std::size_t k = 0; k < walls_.size(); ++k) paint(walls_[k], label_kind::wall, k);
    for (const auto& sl : seals_) paint(sl.cells, label_kind::sealed, sl.edge);
    return grid;
  }

 private:
  void sweep() {
    using namespace partition_detail;
    const int ncols = xs_.cells(), nrows = ys_.cells();
    struct event {
      int col;
      int row_lo, row_hi;
      int delta;
    };
    std::vector<event> events;
    auto push = [&](const index_box& b) {
      events.push_back({b.col_lo, b.row_lo, b.row_hi, +1});
      events.push_back({b.col_hi + 1, b.row_lo, b.row_hi, -1});
    };
    for (const auto& b : walls_) push(b);
    for (const auto& sl : seals_) push(sl.cells);
    std::sort(events.begin(), events.end(),
              [](const event& a, const event& b) { return a.col < b.col; });

    coverage_tree cover(nrows);
    union_find uf;
    struct open_strip {
      int row_hi;
      int col_lo;
      std::uint32_t node;
    };
    std::map<int, open_strip> open;  // keyed by row_lo
    std::vector<index_box> boxes;
    std::vector<std::uint32_t> nodes;
    auto close = [&](std::map<int, open_strip>::iterator it, int last_col) {
      boxes.push_back({it->second.col_lo, last_col, it->first, it->second.row_hi});
      nodes.push_back(it->second.node);
      return open.erase(it);
    };

    open.emplace(0, open_strip{nrows - 1, 0, uf.make()});
    std::size_t e = 0;
    std::vector<std::pair<int, int>> touched;
    struct closed_run {
      int lo, hi;
      std::uint32_t node;
    };
    std::vector<closed_run> previous;
    while (e < events.size() && events[e].col < ncols) {
      const int col = events[e].col;
      touched.clear();
      for (; e < events.size() && events[e].col == col; ++e) {
        cover.add(events[e].row_lo, events[e].row_hi, events[e].delta);
        touched.emplace_back(events[e].row_lo, events[e].row_hi);
      }
      std::sort(touched.begin(), touched.end());
      std::size_t k = 0;
      while (k < touched.size()) {
        int lo = touched[k].first, hi = touched[k].second;
        ++k;
        previous.clear();
        // Grow [lo, hi] over every open strip touching it, and over later
        // touched ranges that the growth reaches.
        for (;;) {
          auto it = open.upper_bound(hi + 1);
          bool grew = false;
          while (it != open.begin()) {
            auto prev = std::prev(it);
            if (prev->second.row_hi < lo - 1) break;
            lo = std::min(lo, prev->first);
            hi = std::max(hi, prev->second.row_hi);
            previous.push_back({prev->first, prev->second.row_hi, prev->second.node});
            close(prev, col - 1);
            it = open.upper_bound(hi + 1);
            grew = true;
          }
          if (k < touched.size() && touched[k].first <= hi + 1) {
            hi = std::max(hi, touched[k].second);
            ++k;
            grew = true;
          }
          if (!grew) break;
        }
        std::sort(previous.begin(), previous.end(),
                  [](const closed_run& a, const closed_run& b) { return a.lo < b.lo; });
        std::size_t pi = 0;
        for (int row = lo; row <= hi;) {
          const int start = cover.first_zero(row, hi);
          if (start < 0) break;
          int stop = cover.first_positive(start, hi);
          stop = stop < 0 ? hi : stop - 1;
          const std::uint32_t node = uf.make();
          open.emplace(start, open_strip{stop, col, node});
          while (pi < previous.size() && previous[pi].hi < start) ++pi;
          for (std::size_t q = pi; q < previous.size() && previous[q].lo <= stop; ++q)
            uf.unite(node, previous[q].node);
          row = stop + 1;
        }
      }
    }
    for (auto it = open.begin(); it != open.end();) it = close(it, ncols - 1);

    // Regions numbered by first appearance in sweep order; region 0 is the
    // outer face, which owns the sentinel column.
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (node, box)
    order.reserve(boxes.size());
    for (std::size_t b = 0; b < boxes.size(); ++b) order.emplace_back(nodes[b], b);
    std::sort(order.begin(), order.end());
    std::vector<std::uint32_t> region_of_root(nodes.size() + 1, std::numeric_limits<std::uint32_t>::max());
    strips_.clear();
    strips_.reserve(boxes.size());
    region_count_ = 0;
    for (const auto& [node, b] : order) {
      const std::uint32_t root = uf.find(node);
      if (region_of_root[root] == std::numeric_limits<std::uint32_t>::max())
        region_of_root[root] = static_cast<std::uint32_t>(region_count_++);
      strips_.push_back({boxes[b], region_of_root[root]});
    }
  }

  static std::vector<std::uint32_t> hits(const partition_detail::tree& t, const index_box& b) {
    namespace bgi = partition_detail::bgi;
    std::vector<std::uint32_t> out;
    for (auto it = t.qbegin(bgi::intersects(partition_detail::to_ibox(b))); it != t.qend(); ++it)
      out.push_back(it->second);
    std::sort(out.begin(), out.end());
    return out;
  }

  void index() {
    using namespace partition_detail;
    std::vector<entry> w, s, f;
    for (std::size_t k = 0; k < walls_.size(); ++k) w.emplace_back(to_ibox(walls_[k]), static_cast<std::uint32_t>(k));
    for (std::size_t k = 0; k < seals_.size(); ++k) s.emplace_back(to_ibox(seals_[k].cells), static_cast<std::uint32_t>(k));
    for (std::size_t k = 0; k < strips_.size(); ++k) f.emplace_back(to_ibox(strips_[k].cells), static_cast<std::uint32_t>(k));
    wall_tree_ = tree(w.begin(), w.end());
    seal_tree_ = tree(s.begin(), s.end());
    strip_tree_ = tree(f.begin(), f.end());
  }

  doubled_axis xs_, ys_;
  std::vector<index_box> walls_;
  std::vector<seal> seals_;
  std::vector<strip> strips_;
  std::size_t region_count_ = 0;
  partition_detail::tree wall_tree_, seal_tree_, strip_tree_;
};

struct dual_edge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  coord capacity = 0;
  std::size_t source = 0;  // index into the gap-edge list
  friend bool operator==(const dual_edge&, const dual_edge&) = default;
};

/// Region on one side of the crossing part of a passable edge's seal: the
/// cell next to its midpoint, else the region cell along that side nearest
/// to it.
inline std::optional<std::uint32_t> probe_face(const region_partition& p, const gap_edge& e,
                                               bool low_side) {
  const index_box b = p.boxed(e.seal.parts[e.seal.crossing]);
  index_box face;
  int col, row;
  if (b.col_lo == b.col_hi) {
    col = low_side ? b.col_lo - 1 : b.col_hi + 1;
    row = (b.row_lo + b.row_hi) / 2;
    face = {col, col, b.row_lo, b.row_hi};
  } else {
    row = low_side ? b.row_lo - 1 : b.row_hi + 1;
    col = (b.col_lo + b.col_hi) / 2;
    face = {b.col_lo, b.col_hi, row, row};
  }
  const auto mid = p.label(col, row);
  if (mid.kind == label_kind::region) return static_cast<std::uint32_t>(mid.id);
  return p.nearest_region(face, col, row);
}

namespace partition_detail {

/// Region pairs facing each other across one straight seal piece. Rows (or
/// columns) of the piece covered by a wall are skipped; elsewhere the crossing
/// costs the smallest capacity among the seals covering it.
template <typename Emit>
void crossings(const region_partition& p, std::span<const gap_edge> edges, const seal& piece,
               bool vertical, Emit&& emit) {
  const index_box b = piece.cells;
  const int lo = vertical ? b.row_lo : b.col_lo;
  const int hi = vertical ? b.row_hi : b.col_hi;
  struct blocker {
    int lo, hi;
    coord cap;  // 0 for walls
    std::size_t edge;
  };
  std::vector<blocker> blockers;
  auto along = [&](const index_box& o) {
    return vertical ? std::pair{o.row_lo, o.row_hi} : std::pair{o.col_lo, o.col_hi};
  };
  for (const auto w : p.walls_in(b)) {
    const auto [a, z] = along(p.walls()[w]);
    blockers.push_back({a, z, 0, piece.edge});
  }
  for (const auto o : p.seals_in(b)) {
    const auto& other = p.seals()[o];
    const auto [a, z] = along(other.cells);
    blockers.push_back({a, z, edges[other.edge].capacity, other.edge});
  }
  std::vector<int> cuts{lo, hi + 1};
  for (const auto& k : blockers) {
    cuts.push_back(std::max(k.lo, lo));
    cuts.push_back(std::min(k.hi, hi) + 1);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const int across = vertical ? b.col_lo : b.row_lo;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const int a = cuts[k], z = cuts[k + 1] - 1;
    if (a < lo || z > hi) continue;
    coord cap = edges[piece.edge].capacity;
    std::size_t source = piece.edge;
    for (const auto& q : blockers)
      if (q.lo <= a && a <= q.hi && (q.cap < cap || (q.cap == cap && q.edge < source))) {
        cap = q.cap;
        source = q.edge;
      }
    if (cap <= 0) continue;
    auto side = [&](int off) {
      const index_box s = vertical ? index_box{across + off, across + off, a, z}
                                   : index_box{a, z, across + off, across + off};
      return p.strips_in(s);
    };
    const auto low = side(-1), high = side(+1);
    for (const auto l : low)
      for (const auto h : high) {
        const auto [l0, l1] = along(p.strips()[l].cells);
        const auto [h0, h1] = along(p.strips()[h].cells);
        if (std::max({l0, h0, a}) <= std::min({l1, h1, z}))
          emit(p.strips()[l].region, p.strips()[h].region, cap, source);
      }
  }
}

}  // namespace partition_detail

/// Dual graph: one edge per pair of regions that face each other across a
/// seal, carrying the largest capacity of any such crossing.
inline std::vector<dual_edge> build_dual_graph(const region_partition& p,
                                               std::span<const gap_edge> edges) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, dual_edge> best;
  for (const auto& piece : p.seals()) {
    if (!edges[piece.edge].passable()) continue;
    auto emit = [&](std::uint32_t a, std::uint32_t b, coord cap, std::size_t source) {
      if (a == b) return;
      if (a > b) std::swap(a, b);
      auto [it, fresh] = best.try_emplace({a, b}, dual_edge{a, b, cap, source});
      auto& d = it->second;
      if (!fresh && (cap > d.capacity || (cap == d.capacity && source < d.source))) {
        d.capacity = cap;
        d.source = source;
      }
    };
    const index_box& b = piece.cells;
    if (b.col_lo == b.col_hi) partition_detail::crossings(p, edges, piece, true, emit);
    if (b.row_lo == b.row_hi) partition_detail::crossings(p, edges, piece, false, emit);
  }
  std::vector<dual_edge> out;
  out.reserve(best.size());
  for (const auto& [key, d] : best) out.push_back(d);
  return out;
}

}  // namespace gapgraph
