#include <gtest/gtest.h>

#include <set>

#include "gapgraph/gabriel.hpp"
#include "gapgraph/oracle.hpp"
#include "support.hpp"

namespace gapgraph {
namespace {

using test::ext;

const rect kLeftI = ext(0, 1, 2, 2), kLeftJ = ext(3, 5, 5, 7);
const rect kMidI = ext(7, 1, 9, 3), kMidJ = {12, 10, 19, 14};

TEST(Shadow, LeftAndRight) {
  const rect anchor = ext(5, 0, 12, 3);
  EXPECT_TRUE(shadow_contains(anchor, ext(-8, 4, 2, 9)));
  EXPECT_FALSE(shadow_contains(anchor, ext(20, 0, 22, 2)));
  EXPECT_FALSE(shadow_contains(anchor, rect{-16, 8, 9, 18}));  // x2 = 4.5
}

TEST(Shadow, ClausesAtTheirBounds) {
  const rect anchor{10, 0, 14, 4};
  EXPECT_TRUE(shadow_contains(anchor, rect{6, 0, 10, 2}));   // touching left side, same bottom
  EXPECT_TRUE(shadow_contains(anchor, rect{6, 6, 8, 9}));    // on the diagonal: 4 + (10 - 8)
  EXPECT_FALSE(shadow_contains(anchor, rect{6, 7, 8, 9}));
  EXPECT_FALSE(shadow_contains(anchor, rect{6, -1, 8, 9}));  // below the bottom line
  EXPECT_FALSE(shadow_contains(anchor, rect{6, 0, 11, 2}));  // reaches past x1
}

std::vector<obstacle> random_obstacles(seeded_rng& rng, std::size_t n, coord span, coord size) {
  std::vector<obstacle> out;
  for (std::size_t k = 0; k < n; ++k) {
    const coord x = rng.range(0, span), y = rng.range(0, span);
    out.push_back({k, {x, y, x + rng.range(1, size), y + rng.range(1, size)}});
  }
  return out;
}

/// All pairs (anchor, earlier obstacle) the shadow predicate accepts, in the
/// sweep's processing order, by linear scans.
std::set<id_pair> brute_shadow_matches(const std::vector<obstacle>& obs) {
  std::vector<std::size_t> order(obs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tuple(obs[a].box.x1, obs[a].box.y1, a) < std::tuple(obs[b].box.x1, obs[b].box.y1, b);
  });
  std::set<id_pair> out;
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = 0; q < p; ++q)
      if (shadow_contains(obs[order[p]], obs[order[q]]))
        out.insert({std::min(order[p], order[q]), std::max(order[p], order[q])});
  return out;
}

TEST(ShadowSweep, SmallCases) {
  for (const auto rule : {sweep_rule::retiring, sweep_rule::exhaustive}) {
    EXPECT_TRUE(shadow_sweep_pass(test::world({{0, 0, 1, 1}}), rule).empty());
    const auto two = test::world({{0, 2, 1, 3}, {3, 0, 4, 2}});
    // anchor first: the right-hand obstacle sees the other in its shadow
    EXPECT_EQ(shadow_sweep_pass(two, rule), (std::vector<id_pair>{{1, 0}}));
  }
}

TEST(ShadowSweep, SubsetOfBruteForceMatches) {
  seeded_rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const auto obs = random_obstacles(rng, 20, 30, 8);
    const auto brute = brute_shadow_matches(obs);
    for (const auto rule : {sweep_rule::retiring, sweep_rule::exhaustive}) {
      const auto pass = shadow_sweep_pass(obs, rule);
      for (const auto& [a, b] : pass) {
        ASSERT_TRUE(brute.contains({std::min(a, b), std::max(a, b)})) << "world " << k;
      }
      if (rule == sweep_rule::retiring) { ASSERT_LE(pass.size(), obs.size()); }
    }
  }
}

TEST(Candidates, SmallCases) {
  EXPECT_TRUE(build_candidates(std::vector<obstacle>{}).pairs.empty());
  EXPECT_TRUE(build_candidates(test::world({{0, 0, 1, 1}})).pairs.empty());
  const auto diag = test::world({{0, 0, 1, 1}, {3, 4, 5, 6}});
  for (const auto rule : {sweep_rule::retiring, sweep_rule::exhaustive})
    EXPECT_EQ(build_candidates(diag, rule).pairs, (std::vector<id_pair>{{0, 1}}));
}

bool covers(const std::vector<id_pair>& sorted, const std::vector<id_pair>& wanted) {
  return std::all_of(wanted.begin(), wanted.end(),
                     [&](const id_pair& p) { return std::binary_search(sorted.begin(), sorted.end(), p); });
}

// Distinct coordinates, no two obstacles touching.
std::vector<obstacle> general_position(seeded_rng& rng, std::size_t n) {
  std::set<coord> xs, ys;
  std::vector<obstacle> out;
  while (out.size() < n) {
    const coord x1 = rng.range(0, 400), y1 = rng.range(0, 400);
    const rect b{x1, y1, x1 + rng.range(1, 40), y1 + rng.range(1, 40)};
    if (xs.contains(b.x1) || xs.contains(b.x2) || ys.contains(b.y1) || ys.contains(b.y2)) continue;
    if (std::any_of(out.begin(), out.end(), [&](const obstacle& o) { return capacity(o.box, b) == 0; })) continue;
    xs.insert({b.x1, b.x2});
    ys.insert({b.y1, b.y2});
    out.push_back({out.size(), b});
  }
  return out;
}

TEST(CandidatesProperty, RetiringRuleInGeneralPosition) {
  seeded_rng rng(9);
  for (int k = 0; k < 1000; ++k) {
    const auto obs = general_position(rng, static_cast<std::size_t>(rng.range(2, 40)));
    const auto c = build_candidates(obs, sweep_rule::retiring);
    ASSERT_LE(c.pairs.size(), 8 * obs.size());
    for (const auto p : c.per_pass) { ASSERT_LE(p, obs.size()); }
    ASSERT_TRUE(covers(c.pairs, oracle_relevant_edges(obs))) << "world " << k;
  }
}

TEST(CandidatesProperty, ExhaustiveRuleCoversOracle) {
  for (std::uint64_t k = 0; k < 600; ++k) {
    const auto obs = test::random_world(k, 40);
    ASSERT_TRUE(covers(build_candidates(obs).pairs, oracle_relevant_edges(obs))) << "world " << k;
  }
}

// Two pairs of touching or overlapping obstacles: the retiring rule drops the
// entry that the later anchor still needed.
TEST(Candidates, RetiringRuleMissOnTouchingWorld) {
  const auto obs = test::world({{4, 0, 6, 3}, {6, 2, 7, 3}, {0, 6, 1, 9}, {3, 6, 5, 8}});
  const auto relevant = oracle_relevant_edges(obs);
  ASSERT_TRUE(std::find(relevant.begin(), relevant.end(), id_pair{0, 3}) != relevant.end());
  EXPECT_FALSE(covers(build_candidates(obs, sweep_rule::retiring).pairs, {{0, 3}}));
  EXPECT_TRUE(covers(build_candidates(obs, sweep_rule::exhaustive).pairs, relevant));
}

TEST(Pathway, Examples) {
  EXPECT_EQ(minimum_pathway(kLeftI, kLeftJ), ext(0, 2, 5, 5));
  EXPECT_EQ(minimum_pathway(kMidI, kMidJ), ext(5, 3, 11, 5));
  EXPECT_EQ(minimum_pathway(ext(0, 0, 3, 3), ext(1, 1, 4, 4)), std::nullopt);
}

TEST(Pathway, XBottleneckIsVerticalPassage) {
  const auto obs = test::world({{0, 0, 1, 4}, {3, 1, 4, 5}});
  const auto e = make_gap_edge(obs[0], obs[1]);
  EXPECT_EQ(e.capacity, 4);
  EXPECT_EQ(e.kind, edge_kind::overlap_y);
  EXPECT_EQ(e.passage, passage_axis::vertical);
  EXPECT_EQ(e.pathway, (rect{2, -2, 6, 12}));
}

TEST(Relevance, TwoObstaclesSurvive) {
  const auto obs = test::world({{0, 0, 1, 1}, {4, 4, 5, 5}});
  const auto g = build_gabriel(obs);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].capacity, 6);
}

TEST(Relevance, CollinearMiddleKillsOuterPair) {
  const auto obs = test::world({{0, 0, 1, 1}, {4, 0, 5, 1}, {2, 0, 3, 1}});
  const auto g = build_gabriel(obs);
  std::vector<id_pair> kept;
  for (const auto& e : g.edges) kept.emplace_back(e.i, e.j);
  EXPECT_EQ(kept, (std::vector<id_pair>{{0, 2}, {1, 2}}));
}

TEST(Relevance, TouchingBoundaryDoesNotKill) {
  // pathway is [1,4] x [-3,4]; the third obstacle sits on its top edge
  const auto obs = test::world({{0, 0, 1, 1}, {4, 0, 5, 1}, {2, 4, 3, 5}});
  const auto g = build_gabriel(obs);
  EXPECT_TRUE(std::any_of(g.edges.begin(), g.edges.end(), [](const gap_edge& e) { return e.i == 0 && e.j == 1; }));
}

TEST(RelevanceProperty, EqualsOracle) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const auto obs = test::random_world(k + 1000, 30);
    std::vector<id_pair> mine;
    for (const auto& e : build_gabriel(obs).edges)
      if (e.passable()) mine.emplace_back(e.i, e.j);
    ASSERT_EQ(mine, oracle_relevant_edges(obs)) << "world " << k + 1000;
  }
}

TEST(RelevanceProperty, WindowsHitMatchesScan) {
  seeded_rng rng(41);
  for (int k = 0; k < 300; ++k) {
    const auto obs = random_obstacles(rng, 25, 40, 10);
    std::vector<rect> windows;
    for (int w = 0; w < 40; ++w) {
      const coord x = rng.range(-5, 45), y = rng.range(-5, 45);
      windows.push_back({x, y, x + rng.range(1, 15), y + rng.range(1, 15)});
    }
    const auto hit = windows_hit(obs, windows);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const bool scan = std::any_of(obs.begin(), obs.end(),
                                    [&](const obstacle& o) { return interiors_intersect(o.box, windows[w]); });
      ASSERT_EQ(hit[w], scan);
    }
  }
}

TEST(GapEdgeProperty, Invariants) {
  for (std::uint64_t k = 0; k < 300; ++k) {
    const auto obs = test::random_world(k + 3000, 40);
    for (const auto& e : build_gabriel(obs).edges) {
      const auto g = gaps(obs[e.i], obs[e.j]);
      ASSERT_LT(e.i, e.j);
      ASSERT_EQ(e.capacity, std::max<coord>(0, std::max(g.gx, g.gy)));
      ASSERT_EQ(e.edge_rect, thin_edge_rect(obs[e.i], obs[e.j]));
      if (!e.passable()) continue;
      const auto& p = e.pathway;
      const auto& r = e.edge_rect;
      ASSERT_TRUE(p.x1 <= r.x1 && r.x2 <= p.x2 && p.y1 <= r.y1 && r.y2 <= p.y2);
      // passage runs across the bottleneck gap
      ASSERT_EQ(e.passage == passage_axis::horizontal, g.gy >= g.gx);
    }
  }
}

TEST(GapEdgeProperty, Superseding) {
  std::size_t witnessed = 0;
  for (std::uint64_t k = 0; k < 400; ++k) {
    const auto obs = test::random_world(k + 5000, 40);
    const auto g = build_gabriel(obs);
    std::set<id_pair> kept;
    for (const auto& e : g.edges) kept.insert({e.i, e.j});
    for (const auto& [i, j] : g.candidates.pairs) {
      if (kept.contains(id_pair{i, j})) continue;
      const auto path = *minimum_pathway(obs[i], obs[j]);
      const coord cap = capacity(obs[i], obs[j]);
      for (const auto& o : obs) {
        if (o.id == i || o.id == j) continue;
        const auto& b = o.box;
        if (!(path.x1 <= b.x1 && b.x2 <= path.x2 && path.y1 <= b.y1 && b.y2 <= path.y2)) continue;
        ++witnessed;
        ASSERT_LE(capacity(obs[i], o), cap);
        ASSERT_LE(capacity(obs[j], o), cap);
      }
    }
  }
  EXPECT_GT(witnessed, 100u);
}

// The planarity statement is about obstacles shrunk to points. With volume,
// two relevant edges drawn centre to centre can cross.
TEST(GapEdge, RelevantEdgesCanCrossCentreToCentre) {
  const auto obs = test::world({{30, 14, 31, 18}, {34, 25, 36, 30}, {30, 25, 31, 28}, {41, 12, 43, 15}});
  const auto relevant = oracle_relevant_edges(obs);
  EXPECT_TRUE(std::find(relevant.begin(), relevant.end(), id_pair{0, 1}) != relevant.end());
  EXPECT_TRUE(std::find(relevant.begin(), relevant.end(), id_pair{2, 3}) != relevant.end());
  auto centre = [&](std::size_t k) { return point{obs[k].box.x1 + obs[k].box.x2, obs[k].box.y1 + obs[k].box.y2}; };
  EXPECT_TRUE(segments_properly_cross(centre(0), centre(1), centre(2), centre(3)));
}

TEST(Seal, ShapesByKind) {
  // one above the other: a vertical cut through the middle of the overlap
  auto s = seal_of(ext(0, 0, 4, 1), ext(1, 3, 5, 4));
  ASSERT_EQ(s.count, 1u);
  EXPECT_EQ(s.parts[0], (rect{5, 2, 5, 6}));
  s = seal_of(ext(0, 0, 1, 4), ext(3, 1, 4, 5));
  ASSERT_EQ(s.count, 1u);
  EXPECT_EQ(s.parts[0], (rect{2, 5, 6, 5}));
  s = seal_of(ext(0, 0, 1, 1), ext(2, 4, 3, 5));  // diagonal, y gap larger
  ASSERT_EQ(s.count, 3u);
  EXPECT_EQ(s.parts[1], (rect{2, 5, 4, 5}));
}

}  // namespace
}  // namespace gapgraph
