#include <gtest/gtest.h>

#include "gapgraph/generate.hpp"
#include "gapgraph/geometry.hpp"
#include "support.hpp"

namespace gapgraph {
namespace {

using test::ext;

// A diagonal pair and a stacked pair. The second has a half-unit coordinate (9.5).
const rect kLeftI = ext(0, 1, 2, 2), kLeftJ = ext(3, 5, 5, 7);
const rect kMidI = ext(7, 1, 9, 3), kMidJ = {12, 10, 19, 14};

TEST(Ingest, DoublesAndNumbers) {
  const std::vector<external_rect> raw{{0, 1, 2, 2}, {5, 5, 6, 9}};
  const auto obs = ingest_rects(raw);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0], (obstacle{0, {0, 2, 4, 4}}));
  EXPECT_EQ(obs[1].id, 1u);
  EXPECT_TRUE(ingest_rects(std::vector<external_rect>{}).empty());
}

TEST(Ingest, RejectsDegenerateWithIndex) {
  const std::vector<external_rect> raw{{0, 0, 1, 1}, {3, 5, 3, 7}};
  try {
    ingest_rects(raw);
    FAIL() << "expected input_error";
  } catch (const input_error& e) {
    EXPECT_EQ(e.index(), 1u);
    EXPECT_NE(std::string(e.what()).find("degenerate extent"), std::string::npos);
  }
}

TEST(Gaps, DiagonalAndStackedPairs) {
  EXPECT_EQ(gaps(kLeftI, kLeftJ), (gap_vector{2, 6}));
  EXPECT_EQ(gaps(kMidI, kMidJ), (gap_vector{-4, 4}));
  EXPECT_EQ(gaps(ext(0, 0, 2, 2), ext(0, 0, 2, 2)), (gap_vector{-4, -4}));
}

TEST(Capacity, Examples) {
  EXPECT_EQ(capacity(kLeftI, kLeftJ), 6);
  EXPECT_EQ(capacity(kMidI, kMidJ), 4);
  EXPECT_EQ(capacity(ext(0, 0, 2, 2), ext(0, 0, 2, 2)), 0);
}

TEST(ThinEdgeRect, Examples) {
  EXPECT_EQ(thin_edge_rect(kMidI, kMidJ), ext(7, 3, 9, 5));
  EXPECT_EQ(thin_edge_rect(kLeftI, kLeftJ), ext(2, 2, 3, 5));
  EXPECT_EQ(thin_edge_rect(ext(0, 0, 1, 1), ext(1, 0, 2, 1)), ext(1, 0, 1, 1));
}

TEST(Expand, Examples) {
  EXPECT_EQ(expand(ext(0, 0, 2, 2), 0), ext(0, 0, 2, 2));
  EXPECT_EQ(expand(ext(0, 0, 1, 1), 1 * kUnitScale), (rect{-1, -1, 3, 3}));
  EXPECT_EQ(expand(kLeftI, 2 * kUnitScale), ext(-1, 0, 3, 3));
}

TEST(PlacementFree, Examples) {
  const std::vector<obstacle> obs{{0, ext(0, 0, 2, 2)}};
  EXPECT_TRUE(placement_free({100, 100}, 8, obs));
  EXPECT_FALSE(placement_free({2, 2}, 0, obs));
  // robot of side 2 centred 1 left of the left side: boundary touch only
  EXPECT_TRUE(placement_free({-2, 2}, 4, obs));
  EXPECT_FALSE(placement_free({-1, 2}, 4, obs));
}

TEST(Symmetry, Examples) {
  EXPECT_EQ(apply_symmetry(ext(3, 4, 5, 9), symmetry{}), ext(3, 4, 5, 9));
  EXPECT_EQ(apply_symmetry(rect{0, 0, 1, 2}, symmetry{1, false}), (rect{0, -1, 2, 0}));
  EXPECT_EQ(apply_symmetry(point{3, 7}, symmetry{0, true}), (point{-3, 7}));
}

TEST(Symmetry, FormsDihedralGroup) {
  const auto all = all_symmetries();
  const point probe{2, 7};  // no symmetry of the square fixes it
  std::vector<std::pair<coord, coord>> images;
  for (const auto s : all) {
    const point q = apply_symmetry(probe, s);
    images.emplace_back(q.x, q.y);
  }
  std::sort(images.begin(), images.end());
  EXPECT_EQ(std::unique(images.begin(), images.end()), images.end());
  for (const auto a : all)
    for (const auto b : all) {
      const point q = apply_symmetry(apply_symmetry(probe, a), b);
      EXPECT_TRUE(std::any_of(all.begin(), all.end(), [&](symmetry c) { return apply_symmetry(probe, c) == q; }));
    }
}

TEST(Symmetry, RoundTripOnRandomRects) {
  seeded_rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const coord x = rng.range(-50, 50), y = rng.range(-50, 50);
    const rect r{x, y, x + rng.range(1, 9), y + rng.range(1, 9)};
    const point p{rng.range(-50, 50), rng.range(-50, 50)};
    for (const auto s : all_symmetries()) {
      const rect t = apply_symmetry(r, s);
      ASSERT_LT(t.x1, t.x2);
      ASSERT_LT(t.y1, t.y2);
      ASSERT_EQ(apply_symmetry(t, inverse_symmetry(s)), r);
      ASSERT_EQ(apply_symmetry(apply_symmetry(p, s), inverse_symmetry(s)), p);
    }
  }
}

rect random_rect(seeded_rng& rng) {
  const coord x = rng.range(-20, 20), y = rng.range(-20, 20);
  return {x, y, x + rng.range(1, 12), y + rng.range(1, 12)};
}

TEST(GapsProperty, SymmetricAndZeroCapacityMeansContact) {
  seeded_rng rng(11);
  for (int k = 0; k < 20000; ++k) {
    const rect a = random_rect(rng), b = random_rect(rng);
    ASSERT_EQ(gaps(a, b), gaps(b, a));
    const bool meet_x = a.x1 <= b.x2 && b.x1 <= a.x2;
    const bool meet_y = a.y1 <= b.y2 && b.y1 <= a.y2;
    ASSERT_EQ(capacity(a, b) == 0, meet_x && meet_y);
  }
}

// Direct statement of the placement rule: some point strictly inside the
// square of side d centred at p lies in the closed rectangle.
bool square_meets(point p, coord d, const rect& o) {
  const coord h = d / 2;
  if (d == 0) return o.contains(p);
  const bool x = p.x - h < o.x2 && o.x1 < p.x + h;
  const bool y = p.y - h < o.y2 && o.y1 < p.y + h;
  return x && y;
}

TEST(PlacementProperty, MatchesOpenSquareIntersection) {
  seeded_rng rng(23);
  for (int k = 0; k < 20000; ++k) {
    const rect o = random_rect(rng);
    const coord d = 2 * rng.range(0, 8);
    const point p{rng.range(-40, 40), rng.range(-40, 40)};
    const std::vector<obstacle> one{{0, o}};
    ASSERT_EQ(placement_free(p, d, one), !square_meets(p, d, o)) << p.x << ',' << p.y << " d=" << d;
  }
}

TEST(Segments, ProperCrossingOnly) {
  EXPECT_TRUE(segments_properly_cross({0, 0}, {4, 4}, {0, 4}, {4, 0}));
  EXPECT_FALSE(segments_properly_cross({0, 0}, {4, 4}, {4, 4}, {8, 0}));  // shared endpoint
  EXPECT_FALSE(segments_properly_cross({0, 0}, {4, 0}, {2, 0}, {6, 0}));  // collinear overlap
  EXPECT_FALSE(segments_properly_cross({0, 0}, {4, 0}, {2, 0}, {2, 5}));  // T junction
}

}  // namespace
}  // namespace gapgraph
