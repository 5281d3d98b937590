#pragma once

// Feasibility index: Gabriel edges, region partition, capacity-weighted dual
// graph and a persistent union-find over the dual edges added in descending
// capacity order. A query (s, t, d) maps both endpoints to regions and asks
// whether they were already joined when the last edge of capacity >= d was
// added.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "gapgraph/gabriel.hpp"
#include "gapgraph/geometry.hpp"
#include "gapgraph/partition.hpp"
#include "gapgraph/persistent_dsu.hpp"

namespace gapgraph {

struct query {
  point s;
  point t;
  coord d = 0;  // half units, even and positive
};

struct build_stats {
  std::size_t obstacles = 0;
  std::size_t candidates = 0;
  std::size_t relevant_edges = 0;  // passable Gabriel edges
  std::size_t regions = 0;
  std::size_t dual_edges = 0;
};

namespace query_detail {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;
using cpoint = bg::model::point<coord, 2, bg::cs::cartesian>;
using cbox = bg::model::box<cpoint>;
using tree = bgi::rtree<std::pair<cbox, std::uint32_t>, bgi::rstar<16>>;

}  // namespace query_detail

class feasibility_index {
 public:
  feasibility_index() = default;

  /// Obstacle ids must be 0..n-1 in order.
  static feasibility_index build(std::vector<obstacle> obstacles,
                                 sweep_rule rule = sweep_rule::exhaustive) {
    for (std::size_t k = 0; k < obstacles.size(); ++k)
      if (obstacles[k].id != k) throw std::invalid_argument("obstacle ids must be dense and ordered");
    feasibility_index ix;
    ix.obstacles_ = std::move(obstacles);
    auto gabriel = build_gabriel(ix.obstacles_, rule);
    ix.candidate_count_ = gabriel.candidates.pairs.size();
    ix.edges_ = std::move(gabriel.edges);
    ix.partition_ = region_partition::build(ix.obstacles_, ix.edges_);
    ix.dual_ = build_dual_graph(ix.partition_, ix.edges_);
    std::stable_sort(ix.dual_.begin(), ix.dual_.end(), [](const dual_edge& a, const dual_edge& b) {
      return a.capacity != b.capacity ? a.capacity > b.capacity : a.source < b.source;
    });
    ix.dsu_ = persistent_dsu(ix.partition_.region_count());
    for (const auto& e : ix.dual_) ix.dsu_.unite(e.a, e.b);
    ix.index_obstacles();
    return ix;
  }

  static feasibility_index restore(std::vector<obstacle> obstacles, std::vector<gap_edge> edges,
                                   std::size_t candidate_count, region_partition partition,
                                   std::vector<dual_edge> dual, persistent_dsu dsu) {
    feasibility_index ix;
    ix.obstacles_ = std::move(obstacles);
    ix.edges_ = std::move(edges);
    ix.candidate_count_ = candidate_count;
    ix.partition_ = std::move(partition);
    ix.dual_ = std::move(dual);
    ix.dsu_ = std::move(dsu);
    if (ix.dsu_.size() != ix.partition_.region_count() || ix.dsu_.now() != ix.dual_.size())
      throw std::invalid_argument("index: union timeline does not match the dual graph");
    ix.index_obstacles();
    return ix;
  }

  const std::vector<obstacle>& obstacles() const { return obstacles_; }
  const std::vector<gap_edge>& edges() const { return edges_; }
  const region_partition& partition() const { return partition_; }
  /// Sorted by descending capacity; the k-th entry was united at time k+1.
  const std::vector<dual_edge>& dual_edges() const { return dual_; }
  const persistent_dsu& dsu() const { return dsu_; }
  std::size_t candidate_count() const { return candidate_count_; }

  build_stats stats() const {
    build_stats s;
    s.obstacles = obstacles_.size();
    s.candidates = candidate_count_;
    s.relevant_edges = static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const gap_edge& e) { return e.passable(); }));
    s.regions = partition_.region_count();
    s.dual_edges = dual_.size();
    return s;
  }

  /// True when the open square of side d at p meets no obstacle.
  bool placement_free(point p, coord d) const {
    namespace bgi = query_detail::bgi;
    const coord h = d / 2;
    // Closed obstacle meets the open square iff it meets the closed square
    // shrunk by one unit (integer coordinates).
    if (h < 1) {
      const query_detail::cpoint q{p.x, p.y};
      return obstacle_tree_.qbegin(bgi::intersects(q)) == obstacle_tree_.qend();
    }
    const query_detail::cbox box{{p.x - h + 1, p.y - h + 1}, {p.x + h - 1, p.y + h - 1}};
    return obstacle_tree_.qbegin(bgi::intersects(box)) == obstacle_tree_.qend();
  }

  /// Region standing for a valid placement, or nullopt when p is not free.
  std::optional<std::uint32_t> region_of(point p, coord d) const {
    if (!placement_free(p, d)) return std::nullopt;
    const auto [col, row] = partition_.cell_of(p);
    const cell_label at = partition_.label(col, row);
    if (at.kind == label_kind::region) return static_cast<std::uint32_t>(at.id);
    // Inside a sealed rectangle: any region cell under the robot's open
    // footprint is joined to every other one at size d, so take the nearest.
    const coord h = d / 2;
    const auto [c0, c1] = partition_.xs().open_span(p.x - h, p.x + h);
    const auto [r0, r1] = partition_.ys().open_span(p.y - h, p.y + h);
    if (auto r = partition_.nearest_region({c0, c1, r0, r1}, col, row)) return r;
    return sealed_fallback(at.id);
  }

  /// Number of unions whose capacity is at least d.
  persistent_dsu::timestamp horizon(coord d) const {
    const auto it = std::partition_point(dual_.begin(), dual_.end(),
                                         [d](const dual_edge& e) { return e.capacity >= d; });
    return static_cast<persistent_dsu::timestamp>(it - dual_.begin());
  }

  verdict feasible(const query& q, std::size_t* hops = nullptr) const {
    if (q.d <= 0 || q.d % 2 != 0) throw std::invalid_argument("robot size must be positive and even in half units");
    const auto u = region_of(q.s, q.d);
    if (!u) return verdict::invalid_start;
    const auto v = region_of(q.t, q.d);
    if (!v) return verdict::invalid_goal;
    if (*u == *v) return verdict::feasible;
    return dsu_.connected(*u, *v, horizon(q.d), hops) ? verdict::feasible : verdict::infeasible;
  }

 private:
  std::uint32_t sealed_fallback(std::size_t edge) const {
    for (const auto& e : dual_)
      if (e.source == edge) return e.a;
    const auto r = probe_face(partition_, edges_[edge], true);
    return r.value_or(0);
  }

  void index_obstacles() {
    std::vector<std::pair<query_detail::cbox, std::uint32_t>> v;
    v.reserve(obstacles_.size());
    for (const auto& o : obstacles_)
      v.emplace_back(query_detail::cbox{{o.box.x1, o.box.y1}, {o.box.x2, o.box.y2}},
                     static_cast<std::uint32_t>(o.id));
    obstacle_tree_ = query_detail::tree(v.begin(), v.end());
  }

  std::vector<obstacle> obstacles_;
  std::vector<gap_edge> edges_;
  std::size_t candidate_count_ = 0;
  region_partition partition_;
  std::vector<dual_edge> dual_;
  persistent_dsu dsu_;
  query_detail::tree obstacle_tree_;
};

}  // namespace gapgraph
