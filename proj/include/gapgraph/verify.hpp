#pragma once

// Engine-versus-oracle cross-check with a shrinking reproduction.
//
// Building with GAPGRAPH_INJECT_FAULT makes the engine side report
// INFEASIBLE wherever it would say FEASIBLE for distinct endpoints, so the
// harness can be shown to catch and minimise a disagreement.

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gapgraph/io.hpp"
#include "gapgraph/oracle.hpp"
#include "gapgraph/query.hpp"

namespace gapgraph {

inline verdict engine_verdict(const feasibility_index& ix, const query& q) {
  const verdict v = ix.feasible(q);
#ifdef GAPGRAPH_INJECT_FAULT
  if (v == verdict::feasible && !(q.s == q.t)) return verdict::infeasible;
#endif
  return v;
}

struct disagreement {
  std::size_t query_index = 0;
  query q;
  verdict engine = verdict::feasible;
  verdict oracle = verdict::feasible;
};

struct repro {
  std::vector<obstacle> obstacles;  // smallest subset found that still disagrees
  query q;
  verdict engine = verdict::feasible;
  verdict oracle = verdict::feasible;
};

struct verify_report {
  std::size_t total = 0;
  std::size_t agree = 0;
  std::vector<disagreement> disagreements;
  std::optional<repro> minimized;  // for the first disagreement
};

/// Greedy one-at-a-time obstacle removal while engine and oracle still
/// disagree on q.
inline repro shrink(std::vector<obstacle> obstacles, const query& q) {
  auto renumber = [](std::vector<obstacle> v) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k].id = k;
    return v;
  };
  auto differ = [&](const std::vector<obstacle>& v, verdict* e, verdict* o) {
    const auto ix = feasibility_index::build(v);
    *e = engine_verdict(ix, q);
    *o = oracle_feasible(v, q.s, q.t, q.d);
    return *e != *o;
  };
  repro r;
  r.q = q;
  obstacles = renumber(std::move(obstacles));
  differ(obstacles, &r.engine, &r.oracle);
  for (std::size_t k = 0; k < obstacles.size();) {
    auto trial = obstacles;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
    trial = renumber(std::move(trial));
    verdict e{}, o{};
    if (differ(trial, &e, &o)) {
      obstacles = std::move(trial);
      r.engine = e;
      r.oracle = o;
    } else {
      ++k;
    }
  }
  r.obstacles = std::move(obstacles);
  return r;
}

inline verify_report verify(std::span<const obstacle> obstacles, std::span<const query> queries) {
  verify_report rep;
  const auto ix = feasibility_index::build({obstacles.begin(), obstacles.end()});
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const auto& q = queries[k];
    const verdict e = engine_verdict(ix, q);
    const verdict o = oracle_feasible(obstacles, q.s, q.t, q.d);
    ++rep.total;
    if (e == o)
      ++rep.agree;
    else
      rep.disagreements.push_back({k, q, e, o});
  }
  if (!rep.disagreements.empty())
    rep.minimized = shrink({obstacles.begin(), obstacles.end()}, rep.disagreements.front().q);
  return rep;
}

/// Repro as a world file plus one query line, both in external units.
inline void write_repro(std::ostream& world, std::ostream& queries, const repro& r) {
  world << "# engine " << to_string(r.engine) << ", oracle " << to_string(r.oracle) << '\n';
  for (const auto& o : r.obstacles)
    world << "R " << o.box.x1 / kUnitScale << ' ' << o.box.y1 / kUnitScale << ' ' << o.box.x2 / kUnitScale << ' '
          << o.box.y2 / kUnitScale << '\n';
  queries << "Q " << r.q.s.x / kUnitScale << ' ' << r.q.s.y / kUnitScale << ' ' << r.q.t.x / kUnitScale << ' '
          << r.q.t.y / kUnitScale << ' ' << r.q.d / kUnitScale << '\n';
}

}  // namespace gapgraph
