#pragma once

// Helpers shared by the unit tests.

#include <vector>

#include "gapgraph/generate.hpp"
#include "gapgraph/geometry.hpp"

namespace gapgraph::test {

/// Rectangle given in external units, returned in internal half units.
inline rect ext(coord x1, coord y1, coord x2, coord y2) {
  return {x1 * kUnitScale, y1 * kUnitScale, x2 * kUnitScale, y2 * kUnitScale};
}

inline std::vector<obstacle> world(std::vector<external_rect> raw) { return ingest_rects(raw); }

/// The generator worlds used by the property tests: kinds rotate, sizes are
/// drawn from [1, nmax].
inline std::vector<obstacle> random_world(std::uint64_t k, std::size_t nmax) {
  seeded_rng r(k * 6151 + 17);
  const auto kind = static_cast<world_kind>(k % 3);
  const auto n = static_cast<std::size_t>(r.range(1, static_cast<coord>(nmax)));
  return ingest_rects(generate_world(kind, n, k));
}

}  // namespace gapgraph::test
