#pragma once

// Scaling study: build time, per-query latency and DSU hop counts on uniform
// worlds of growing size. Hop counts make the logarithmic query bound
// visible without wall-clock noise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "gapgraph/generate.hpp"
#include "gapgraph/query.hpp"

namespace gapgraph {

struct bench_row {
  std::size_t n = 0;
  std::size_t candidates = 0;
  std::size_t relevant_edges = 0;
  std::size_t regions = 0;
  std::size_t dual_edges = 0;
  double build_seconds = 0;
  double query_median_ns = 0;
  double query_p99_ns = 0;
  double hops_mean = 0;
  std::size_t hops_max = 0;
  std::size_t feasible = 0;  // verdict tally, a determinism fingerprint
};

inline bench_row bench_one(std::size_t n, std::uint64_t seed, std::size_t queries = 2000) {
  using clock = std::chrono::steady_clock;
  bench_row row;
  row.n = n;
  const auto world = generate_world(world_kind::uniform, n, seed);
  auto obstacles = ingest_rects(world);
  const auto t0 = clock::now();
  const auto ix = feasibility_index::build(std::move(obstacles));
  row.build_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  const auto s = ix.stats();
  row.candidates = s.candidates;
  row.relevant_edges = s.relevant_edges;
  row.regions = s.regions;
  row.dual_edges = s.dual_edges;

  const auto qs = generate_queries(world, queries, 4, seed + 1, [&](coord x, coord y, coord d) {
    return ix.placement_free({x * kUnitScale, y * kUnitScale}, d * kUnitScale);
  });
  std::vector<double> ns;
  ns.reserve(qs.size());
  std::size_t hop_total = 0;
  for (const auto& e : qs) {
    const query q{{e.sx * kUnitScale, e.sy * kUnitScale}, {e.tx * kUnitScale, e.ty * kUnitScale}, e.d * kUnitScale};
    std::size_t hops = 0;
    const auto a = clock::now();
    const verdict v = ix.feasible(q, &hops);
    ns.push_back(std::chrono::duration<double, std::nano>(clock::now() - a).count());
    hop_total += hops;
    row.hops_max = std::max(row.hops_max, hops);
    if (v == verdict::feasible) ++row.feasible;
  }
  std::sort(ns.begin(), ns.end());
  if (!ns.empty()) {
    row.query_median_ns = ns[ns.size() / 2];
    row.query_p99_ns = ns[std::min(ns.size() - 1, ns.size() * 99 / 100)];
    row.hops_mean = static_cast<double>(hop_total) / static_cast<double>(ns.size());
  }
  return row;
}

inline void write_bench_csv(std::ostream& out, std::span<const bench_row> rows) {
  out << "n,candidates,relevant_edges,regions,dual_edges,build_s,query_median_ns,query_p99_ns,hops_mean,hops_max,feasible\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.candidates << ',' << r.relevant_edges << ',' << r.regions << ',' << r.dual_edges << ','
        << r.build_seconds << ',' << r.query_median_ns << ',' << r.query_p99_ns << ',' << r.hops_mean << ','
        << r.hops_max << ',' << r.feasible << '\n';
}

}  // namespace gapgraph
