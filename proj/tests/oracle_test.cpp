#include <gtest/gtest.h>

#include "gapgraph/oracle.hpp"
#include "support.hpp"

namespace gapgraph {
namespace {

// Box with a divider; the divider's two halves leave a gap of 3 between
// y = 5 and y = 8.
std::vector<obstacle> divided_box() {
  return test::world({{0, 0, 20, 1}, {0, 11, 20, 12}, {0, 0, 1, 12}, {19, 0, 20, 12}, {9, 1, 11, 5}, {9, 8, 11, 11}});
}

TEST(OracleFeasible, Examples) {
  EXPECT_EQ(oracle_feasible({}, {0, 0}, {50, -20}, 10), verdict::feasible);
  const auto w = divided_box();
  EXPECT_EQ(oracle_feasible(w, {8, 13}, {32, 13}, 6), verdict::feasible);
  EXPECT_EQ(oracle_feasible(w, {8, 13}, {32, 13}, 8), verdict::infeasible);
  EXPECT_EQ(oracle_feasible(w, {3, 13}, {32, 13}, 6), verdict::invalid_start);
  EXPECT_EQ(oracle_feasible(w, {8, 13}, {20, 4}, 2), verdict::invalid_goal);
}

TEST(OracleRelevant, Examples) {
  EXPECT_EQ(oracle_relevant_edges(test::world({{0, 0, 1, 1}, {3, 3, 4, 4}})), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
  EXPECT_EQ(oracle_relevant_edges(test::world({{0, 0, 1, 1}, {4, 0, 5, 1}, {2, 0, 3, 1}})),
            (std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}}));
  EXPECT_TRUE(oracle_relevant_edges(test::world({{0, 0, 2, 2}, {1, 1, 3, 3}})).empty());
}

TEST(OracleProperty, SymmetricMonotoneRefinable) {
  seeded_rng rng(5);
  for (std::uint64_t w = 0; w < 200; ++w) {
    const auto obs = test::random_world(w + 20000, 30);
    const rect b = bounding_box(obs);
    for (int q = 0; q < 10; ++q) {
      const point s{rng.range(b.x1 - 6, b.x2 + 6), rng.range(b.y1 - 6, b.y2 + 6)};
      const point t{rng.range(b.x1 - 6, b.x2 + 6), rng.range(b.y1 - 6, b.y2 + 6)};
      const coord d = 2 * rng.range(1, 6);
      const verdict v = oracle_feasible(obs, s, t, d);
      const verdict back = oracle_feasible(obs, t, s, d);
      if (v == verdict::feasible || v == verdict::infeasible) { ASSERT_EQ(back, v); }
      if (v == verdict::invalid_start) { ASSERT_TRUE(back == verdict::invalid_goal || back == verdict::invalid_start); }
      if (v == verdict::feasible)
        for (coord e = 2; e < d; e += 2) { ASSERT_EQ(oracle_feasible(obs, s, t, e), verdict::feasible); }
      std::vector<coord> xs, ys;
      for (int k = 0; k < 6; ++k) {
        xs.push_back(rng.range(b.x1 - 10, b.x2 + 10));
        ys.push_back(rng.range(b.y1 - 10, b.y2 + 10));
      }
      ASSERT_EQ(oracle_feasible(obs, s, t, d, xs, ys), v);
    }
  }
}

TEST(OracleProperty, BlockedCellsMatchPlacement) {
  seeded_rng rng(6);
  for (std::uint64_t w = 0; w < 100; ++w) {
    const auto obs = test::random_world(w + 21000, 20);
    const coord d = 2 * rng.range(1, 4);
    const oracle_grid grid(obs, d, {});
    // every cell's sample point is free exactly when the cell is
    for (int i = 0; i < grid.nx(); ++i)
      for (int j = 0; j < grid.ny(); ++j) {
        const auto& xs = grid.xs();
        const auto& ys = grid.ys();
        const coord x2 = i % 2 == 0 ? 2 * xs[i / 2] : xs[i / 2] + xs[i / 2 + 1];
        const coord y2 = j % 2 == 0 ? 2 * ys[j / 2] : ys[j / 2] + ys[j / 2 + 1];
        // sample point is doubled, so scale the world to match
        bool free = true;
        for (const auto& o : obs) {
          const rect r{2 * o.box.x1, 2 * o.box.y1, 2 * o.box.x2, 2 * o.box.y2};
          if (r.x1 - d < x2 && x2 < r.x2 + d && r.y1 - d < y2 && y2 < r.y2 + d) free = false;
        }
        ASSERT_EQ(grid.blocked(i, j), !free);
      }
  }
}

}  // namespace
}  // namespace gapgraph
