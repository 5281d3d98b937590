#pragma once

// Plain-text world, query and index files.
//
//   world:  R x1 y1 x2 y2 | P k x1 y1 ... xk yk     (external units)
//   query:  Q sx sy tx ty d                         (external units)
//   index:  versioned dump of every build product, internal units
//
// '#' starts a comment that runs to the end of the line.

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapgraph/decompose.hpp"
#include "gapgraph/gabriel.hpp"
#include "gapgraph/generate.hpp"
#include "gapgraph/geometry.hpp"
#include "gapgraph/partition.hpp"
#include "gapgraph/persistent_dsu.hpp"
#include "gapgraph/query.hpp"

namespace gapgraph {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace io_detail {

/// Lines with comments stripped, skipping blank ones; keeps 1-based numbers.
class line_reader {
 public:
  explicit line_reader(std::istream& in) : in_(in) {}

  bool next(std::istringstream& fields) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      fields.clear();
      fields.str(raw);
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <typename T>
T read(std::istringstream& fields, std::size_t line, const char* what) {
  T v{};
  if (!(fields >> v)) throw parse_error(line, std::string("expected ") + what);
  return v;
}

inline void expect_end(std::istringstream& fields, std::size_t line) {
  std::string extra;
  if (fields >> extra) throw parse_error(line, "unexpected trailing field '" + extra + "'");
}

/// Reads one whitespace-free keyword line such as "edges 12".
inline std::size_t read_count(line_reader& lines, const char* keyword) {
  std::istringstream f;
  if (!lines.next(f)) throw parse_error(lines.number(), std::string("missing section '") + keyword + "'");
  const auto word = read<std::string>(f, lines.number(), "section keyword");
  if (word != keyword) throw parse_error(lines.number(), "expected section '" + std::string(keyword) + "', got '" + word + "'");
  const auto n = read<std::size_t>(f, lines.number(), "count");
  expect_end(f, lines.number());
  return n;
}

inline std::istringstream& record(line_reader& lines, std::istringstream& f, const char* keyword) {
  if (!lines.next(f)) throw parse_error(lines.number(), std::string("truncated section '") + keyword + "'");
  return f;
}

}  // namespace io_detail

// ---------------------------------------------------------------- worlds --

inline std::vector<world_item> read_world(std::istream& in) {
  using namespace io_detail;
  line_reader lines(in);
  std::vector<world_item> items;
  std::istringstream f;
  while (lines.next(f)) {
    const std::size_t ln = lines.number();
    const auto tag = read<std::string>(f, ln, "record tag");
    if (tag == "R") {
      external_rect r;
      r.x1 = read<coord>(f, ln, "x1");
      r.y1 = read<coord>(f, ln, "y1");
      r.x2 = read<coord>(f, ln, "x2");
      r.y2 = read<coord>(f, ln, "y2");
      expect_end(f, ln);
      if (!(r.x1 < r.x2 && r.y1 < r.y2)) throw parse_error(ln, "degenerate extent");
      items.emplace_back(r);
    } else if (tag == "P") {
      const auto k = read<std::size_t>(f, ln, "vertex count");
      std::vector<point> v(k);
      for (auto& p : v) {
        p.x = read<coord>(f, ln, "vertex x");
        p.y = read<coord>(f, ln, "vertex y");
      }
      expect_end(f, ln);
      try {
        validate_polygon(v);
      } catch (const polygon_error& e) {
        throw parse_error(ln, e.what());
      }
      items.emplace_back(std::move(v));
    } else {
      throw parse_error(ln, "unknown record '" + tag + "' (expected R or P)");
    }
  }
  return items;
}

inline void write_world(std::ostream& out, const std::vector<external_rect>& rects,
                        const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& r : rects) out << "R " << r.x1 << ' ' << r.y1 << ' ' << r.x2 << ' ' << r.y2 << '\n';
}

// --------------------------------------------------------------- queries --

/// Queries converted to internal units.
inline std::vector<query> read_queries(std::istream& in) {
  using namespace io_detail;
  line_reader lines(in);
  std::vector<query> out;
  std::istringstream f;
  while (lines.next(f)) {
    const std::size_t ln = lines.number();
    const auto tag = read<std::string>(f, ln, "record tag");
    if (tag != "Q") throw parse_error(ln, "unknown record '" + tag + "' (expected Q)");
    query q;
    q.s.x = read<coord>(f, ln, "sx") * kUnitScale;
    q.s.y = read<coord>(f, ln, "sy") * kUnitScale;
    q.t.x = read<coord>(f, ln, "tx") * kUnitScale;
    q.t.y = read<coord>(f, ln, "ty") * kUnitScale;
    const auto d = read<coord>(f, ln, "d");
    expect_end(f, ln);
    if (d <= 0) throw parse_error(ln, "robot size d must be positive");
    q.d = d * kUnitScale;
    out.push_back(q);
  }
  return out;
}

inline void write_queries(std::ostream& out, const std::vector<external_query>& qs) {
  for (const auto& q : qs)
    out << "Q " << q.sx << ' ' << q.sy << ' ' << q.tx << ' ' << q.ty << ' ' << q.d << '\n';
}

// ----------------------------------------------------------------- index --

inline constexpr const char* kIndexMagic = "gapgraph-index";
inline constexpr int kIndexVersion = 1;

inline void write_index(std::ostream& out, const feasibility_index& ix) {
  auto box = [&](const index_box& b) {
    out << b.col_lo << ' ' << b.col_hi << ' ' << b.row_lo << ' ' << b.row_hi;
  };
  out << kIndexMagic << ' ' << kIndexVersion << '\n';
  out << "obstacles " << ix.obstacles().size() << '\n';
  for (const auto& o : ix.obstacles())
    out << o.box.x1 << ' ' << o.box.y1 << ' ' << o.box.x2 << ' ' << o.box.y2 << '\n';
  out << "candidates " << ix.candidate_count() << '\n';
  out << "edges " << ix.edges().size() << '\n';
  for (const auto& e : ix.edges()) out << e.i << ' ' << e.j << ' ' << e.capacity << '\n';
  const auto& p = ix.partition();
  for (const auto* axis : {&p.xs(), &p.ys()}) {
    out << (axis == &p.xs() ? "xs " : "ys ") << axis->lines().size() << '\n';
    for (std::size_t k = 0; k < axis->lines().size(); ++k)
      out << axis->lines()[k] << (k + 1 < axis->lines().size() ? ' ' : '\n');
  }
  out << "walls " << p.walls().size() << '\n';
  for (const auto& w : p.walls()) {
    box(w);
    out << '\n';
  }
  out << "seals " << p.seals().size() << '\n';
  for (const auto& s : p.seals()) {
    box(s.cells);
    out << ' ' << s.edge << '\n';
  }
  out << "regions " << p.region_count() << '\n';
  out << "strips " << p.strips().size() << '\n';
  for (const auto& s : p.strips()) {
    box(s.cells);
    out << ' ' << s.region << '\n';
  }
  out << "dual " << ix.dual_edges().size() << '\n';
  for (const auto& d : ix.dual_edges()) out << d.a << ' ' << d.b << ' ' << d.capacity << ' ' << d.source << '\n';
  const auto& dsu = ix.dsu();
  out << "dsu " << dsu.size() << ' ' << dsu.now() << '\n';
  for (std::size_t k = 0; k < dsu.size(); ++k) {
    out << dsu.parents()[k] << ' ';
    if (dsu.stamps()[k] == persistent_dsu::kNever)
      out << '-';
    else
      out << dsu.stamps()[k];
    out << ' ' << static_cast<int>(dsu.ranks()[k]) << '\n';
  }
  out << "end\n";
}

inline feasibility_index read_index(std::istream& in) {
  using namespace io_detail;
  line_reader lines(in);
  std::istringstream f;
  if (!lines.next(f)) throw parse_error(lines.number(), "empty index file");
  if (read<std::string>(f, lines.number(), "magic") != kIndexMagic)
    throw parse_error(lines.number(), "not a gapgraph index");
  if (const int v = read<int>(f, lines.number(), "version"); v != kIndexVersion)
    throw parse_error(lines.number(), "unsupported index version " + std::to_string(v));

  auto read_box = [&](std::istringstream& g) {
    index_box b;
    b.col_lo = read<int>(g, lines.number(), "col_lo");
    b.col_hi = read<int>(g, lines.number(), "col_hi");
    b.row_lo = read<int>(g, lines.number(), "row_lo");
    b.row_hi = read<int>(g, lines.number(), "row_hi");
    if (b.col_lo > b.col_hi || b.row_lo > b.row_hi) throw parse_error(lines.number(), "inverted cell box");
    return b;
  };

  std::vector<obstacle> obstacles(read_count(lines, "obstacles"));
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    auto& g = record(lines, f, "obstacles");
    rect r;
    r.x1 = read<coord>(g, lines.number(), "x1");
    r.y1 = read<coord>(g, lines.number(), "y1");
    r.x2 = read<coord>(g, lines.number(), "x2");
    r.y2 = read<coord>(g, lines.number(), "y2");
    expect_end(g, lines.number());
    if (!(r.x1 < r.x2 && r.y1 < r.y2)) throw parse_error(lines.number(), "degenerate obstacle");
    obstacles[k] = {k, r};
  }
  const std::size_t candidates = read_count(lines, "candidates");
  std::vector<gap_edge> edges(read_count(lines, "edges"));
  for (auto& e : edges) {
    auto& g = record(lines, f, "edges");
    const auto i = read<std::size_t>(g, lines.number(), "i");
    const auto j = read<std::size_t>(g, lines.number(), "j");
    const auto cap = read<coord>(g, lines.number(), "capacity");
    expect_end(g, lines.number());
    if (i >= j || j >= obstacles.size()) throw parse_error(lines.number(), "edge endpoints out of range");
    e = make_gap_edge(obstacles[i], obstacles[j]);
    if (e.capacity != cap) throw parse_error(lines.number(), "edge capacity does not match its obstacles");
  }
  std::vector<coord> axes[2];
  for (int a = 0; a < 2; ++a) {
    axes[a].resize(read_count(lines, a == 0 ? "xs" : "ys"));
    auto& g = record(lines, f, a == 0 ? "xs" : "ys");
    for (auto& c : axes[a]) c = read<coord>(g, lines.number(), "coordinate");
    expect_end(g, lines.number());
  }
  doubled_axis xs, ys;
  try {
    xs = doubled_axis::from_lines(std::move(axes[0]));
    ys = doubled_axis::from_lines(std::move(axes[1]));
  } catch (const std::invalid_argument& e) {
    throw parse_error(lines.number(), e.what());
  }
  auto in_grid = [&](const index_box& b) {
    if (b.col_lo < 0 || b.row_lo < 0 || b.col_hi >= xs.cells() || b.row_hi >= ys.cells())
      throw parse_error(lines.number(), "cell box outside the grid");
    return b;
  };
  std::vector<index_box> walls(read_count(lines, "walls"));
  for (auto& w : walls) {
    auto& g = record(lines, f, "walls");
    w = in_grid(read_box(g));
    expect_end(g, lines.number());
  }
  std::vector<seal> seals(read_count(lines, "seals"));
  for (auto& s : seals) {
    auto& g = record(lines, f, "seals");
    s.cells = in_grid(read_box(g));
    s.edge = read<std::uint32_t>(g, lines.number(), "edge");
    expect_end(g, lines.number());
    if (s.edge >= edges.size()) throw parse_error(lines.number(), "seal edge out of range");
  }
  const std::size_t regions = read_count(lines, "regions");
  std::vector<strip> strips(read_count(lines, "strips"));
  for (auto& s : strips) {
    auto& g = record(lines, f, "strips");
    s.cells = in_grid(read_box(g));
    s.region = read<std::uint32_t>(g, lines.number(), "region");
    expect_end(g, lines.number());
    if (s.region >= regions) throw parse_error(lines.number(), "strip region out of range");
  }
  std::vector<dual_edge> dual(read_count(lines, "dual"));
  for (auto& d : dual) {
    auto& g = record(lines, f, "dual");
    d.a = read<std::uint32_t>(g, lines.number(), "a");
    d.b = read<std::uint32_t>(g, lines.number(), "b");
    d.capacity = read<coord>(g, lines.number(), "capacity");
    d.source = read<std::size_t>(g, lines.number(), "source");
    expect_end(g, lines.number());
    if (d.a >= regions || d.b >= regions || d.source >= edges.size())
      throw parse_error(lines.number(), "dual edge out of range");
  }
  if (!std::is_sorted(dual.begin(), dual.end(), [](const dual_edge& a, const dual_edge& b) {
        return a.capacity > b.capacity;
      }))
    throw parse_error(lines.number(), "dual edges are not in descending capacity order");

  if (!lines.next(f) || read<std::string>(f, lines.number(), "section") != "dsu")
    throw parse_error(lines.number(), "missing section 'dsu'");
  const auto nodes = read<std::size_t>(f, lines.number(), "node count");
  const auto now = read<persistent_dsu::timestamp>(f, lines.number(), "time");
  expect_end(f, lines.number());
  std::vector<std::uint32_t> parent(nodes);
  std::vector<persistent_dsu::timestamp> stamp(nodes);
  std::vector<std::uint8_t> rank(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    auto& g = record(lines, f, "dsu");
    parent[k] = read<std::uint32_t>(g, lines.number(), "parent");
    const auto t = read<std::string>(g, lines.number(), "stamp");
    try {
      stamp[k] = t == "-" ? persistent_dsu::kNever : static_cast<persistent_dsu::timestamp>(std::stoul(t));
    } catch (const std::exception&) {
      throw parse_error(lines.number(), "bad stamp '" + t + "'");
    }
    const int r = read<int>(g, lines.number(), "rank");
    if (r < 0 || r > std::numeric_limits<std::uint8_t>::max()) throw parse_error(lines.number(), "bad rank");
    rank[k] = static_cast<std::uint8_t>(r);
    expect_end(g, lines.number());
  }
  if (!lines.next(f) || read<std::string>(f, lines.number(), "end marker") != "end")
    throw parse_error(lines.number(), "missing end marker");

  try {
    auto partition = region_partition::restore(std::move(xs), std::move(ys), std::move(walls), std::move(seals),
                                               std::move(strips), regions);
    auto dsu = persistent_dsu::restore(std::move(parent), std::move(stamp), std::move(rank), now);
    return feasibility_index::restore(std::move(obstacles), std::move(edges), candidates, std::move(partition),
                                      std::move(dual), std::move(dsu));
  } catch (const std::invalid_argument& e) {
    throw parse_error(lines.number(), e.what());
  }
}

}  // namespace gapgraph
