// gapgraph command-line tool. Exit status: 0 ran, 1 input error,
// 2 verification mismatch.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gapgraph/bench.hpp"
#include "gapgraph/circle.hpp"
#include "gapgraph/decompose.hpp"
#include "gapgraph/generate.hpp"
#include "gapgraph/io.hpp"
#include "gapgraph/query.hpp"
#include "gapgraph/svg.hpp"
#include "gapgraph/verify.hpp"

namespace {

using namespace gapgraph;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw usage_error("cannot write '" + path + "'");
  return out;
}

std::vector<obstacle> load_world(const std::string& path) {
  auto in = open_in(path);
  const auto items = read_world(in);
  return ingest_world(items).obstacles;
}

feasibility_index load_index(const std::string& path) {
  auto in = open_in(path);
  return read_index(in);
}

/// Answers in input order; workers take interleaved slices of the batch.
std::vector<verdict> answer(const feasibility_index& ix, const std::vector<query>& qs, unsigned jobs) {
  std::vector<verdict> out(qs.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(qs.size(), 1))));
  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < qs.size(); k += jobs) out[k] = ix.feasible(qs[k]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<query> random_queries(const std::vector<obstacle>& obstacles, std::size_t k, std::uint64_t seed) {
  std::vector<external_rect> world;
  for (const auto& o : obstacles)
    world.push_back({o.box.x1 / kUnitScale, o.box.y1 / kUnitScale, o.box.x2 / kUnitScale, o.box.y2 / kUnitScale});
  const auto ext = generate_queries(world, k, 6, seed, [&](coord x, coord y, coord d) {
    return placement_free({x * kUnitScale, y * kUnitScale}, d * kUnitScale, obstacles);
  });
  std::vector<query> out;
  for (const auto& e : ext)
    out.push_back({{e.sx * kUnitScale, e.sy * kUnitScale}, {e.tx * kUnitScale, e.ty * kUnitScale}, e.d * kUnitScale});
  return out;
}

std::vector<point> read_centers(std::istream& in) {
  std::vector<point> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream f(raw);
    std::string tag;
    if (!(f >> tag)) continue;
    point p;
    std::string extra;
    if (tag != "C" || !(f >> p.x >> p.y) || (f >> extra))
      throw parse_error(line, "expected 'C x y'");
    out.push_back(p);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility queries for square robots among rectangular obstacles"};
  app.require_subcommand(1);

  std::string world_path, index_path, query_path, out_path, svg_path, repro_prefix = "repro", csv_path;
  std::string kind = "uniform", sweep = "exhaustive";
  std::size_t n = 100, random_k = 0, bench_queries = 2000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool show_pathways = false, no_regions = false, no_edges = false;
  coord radius = 0;
  std::vector<std::size_t> sizes{1000, 10000, 100000};

  auto* build = app.add_subcommand("build", "Build an index from a world file and print its counts");
  build->add_option("world", world_path, "World file")->required();
  build->add_option("index", index_path, "Index output path")->required();
  build->add_option("--sweep", sweep, "Candidate sweep rule")->check(CLI::IsMember({"exhaustive", "retiring"}));

  auto* query_cmd = app.add_subcommand("query", "Answer a query file against an index");
  query_cmd->add_option("index", index_path, "Index file")->required();
  query_cmd->add_option("queries", query_path, "Query file")->required();
  query_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Generate a random world");
  gen->add_option("--kind", kind, "uniform, cluster or maze")->check(CLI::IsMember({"uniform", "cluster", "maze"}));
  gen->add_option("-n", n, "Number of rectangles")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the engine against the brute-force oracle");
  verify_cmd->add_option("world", world_path, "World file")->required();
  auto* verify_queries = verify_cmd->add_option("queries", query_path, "Query file");
  auto* verify_random = verify_cmd->add_option("--random", random_k, "Number of random queries");
  verify_queries->excludes(verify_random);
  verify_cmd->add_option("--seed", seed, "Seed for random queries");
  verify_cmd->add_option("--repro", repro_prefix, "Prefix for the minimised reproduction files");

  auto* render = app.add_subcommand("render", "Render an index to SVG");
  render->add_option("index", index_path, "Index file")->required();
  render->add_option("svg", svg_path, "SVG output path")->required();
  render->add_flag("--show-pathways", show_pathways, "Outline minimum pathways");
  render->add_flag("--no-regions", no_regions, "Do not colour regions");
  render->add_flag("--no-edges", no_edges, "Do not draw thin edges");

  auto* bench = app.add_subcommand("bench", "Scaling study on uniform worlds");
  bench->add_option("--sizes", sizes, "World sizes")->delimiter(',');
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--queries", bench_queries, "Queries per size");
  bench->add_option("--csv", csv_path, "Also write CSV to this file");

  auto* circles = app.add_subcommand("circles", "Gabriel graph of equal-radius circular obstacles");
  circles->add_option("centers", world_path, "File of 'C x y' lines");
  auto* circles_random = circles->add_option("--random", random_k, "Use this many random centres instead");
  circles->add_option("--seed", seed, "Seed for random centres");
  circles->add_option("--radius", radius, "Obstacle radius, for the drawing");
  circles->add_option("--svg", svg_path, "SVG output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      const auto ix = feasibility_index::build(load_world(world_path),
                                               sweep == "retiring" ? sweep_rule::retiring : sweep_rule::exhaustive);
      auto out = open_out(index_path);
      write_index(out, ix);
      const auto s = ix.stats();
      std::cout << "obstacles " << s.obstacles << "\ncandidates " << s.candidates << "\nrelevant_edges "
                << s.relevant_edges << "\nregions " << s.regions << "\ndual_edges " << s.dual_edges << '\n';
    } else if (*query_cmd) {
      const auto ix = load_index(index_path);
      auto in = open_in(query_path);
      const auto qs = read_queries(in);
      for (const auto v : answer(ix, qs, jobs)) std::cout << to_string(v) << '\n';
    } else if (*gen) {
      const auto world = generate_world(parse_world_kind(kind), n, seed);
      const std::string comment = "gen kind=" + kind + " n=" + std::to_string(n) + " seed=" + std::to_string(seed);
      if (out_path.empty()) {
        write_world(std::cout, world, comment);
      } else {
        auto out = open_out(out_path);
        write_world(out, world, comment);
      }
    } else if (*verify_cmd) {
      const auto obstacles = load_world(world_path);
      std::vector<query> qs;
      if (!query_path.empty()) {
        auto in = open_in(query_path);
        qs = read_queries(in);
      } else {
        qs = random_queries(obstacles, random_k ? random_k : 100, seed);
      }
      const auto rep = verify(obstacles, qs);
      std::cout << rep.agree << '/' << rep.total << " agree\n";
      if (!rep.disagreements.empty()) {
        for (const auto& d : rep.disagreements)
          std::cout << "query " << d.query_index << ": engine " << to_string(d.engine) << ", oracle "
                    << to_string(d.oracle) << '\n';
        auto w = open_out(repro_prefix + ".world");
        auto q = open_out(repro_prefix + ".queries");
        write_repro(w, q, *rep.minimized);
        std::cout << "minimised repro (" << rep.minimized->obstacles.size() << " obstacles) written to "
                  << repro_prefix << ".world and " << repro_prefix << ".queries\n";
        return 2;
      }
    } else if (*render) {
      const auto ix = load_index(index_path);
      auto out = open_out(svg_path);
      render_options opt;
      opt.pathways = show_pathways;
      opt.regions = !no_regions;
      opt.edges = !no_edges;
      render_index(out, ix, opt);
    } else if (*bench) {
      std::vector<bench_row> rows;
      std::cout << "       n   build_s  median_ns     p99_ns  hops_mean  hops_max  candidates  regions\n";
      for (const auto size : sizes) {
        rows.push_back(bench_one(size, seed, bench_queries));
        const auto& r = rows.back();
        char line[160];
        std::snprintf(line, sizeof line, "%8zu %9.3f %10.0f %10.0f %10.2f %9zu %11zu %8zu\n", r.n, r.build_seconds,
                      r.query_median_ns, r.query_p99_ns, r.hops_mean, r.hops_max, r.candidates, r.regions);
        std::cout << line;
      }
      std::cout << '\n';
      write_bench_csv(std::cout, rows);
      if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        write_bench_csv(out, rows);
      }
    } else if (*circles) {
      std::vector<point> centers;
      if (*circles_random) {
        centers = generate_centers(random_k, seed);
      } else {
        if (world_path.empty()) throw usage_error("give a centres file or --random");
        auto in = open_in(world_path);
        centers = read_centers(in);
      }
      const auto g = gabriel_edges(centers);
      for (const auto& e : g.edges)
        std::cout << e.i << ' ' << e.j << ' ' << static_cast<long long>(e.capacity) << '\n';
      if (!svg_path.empty()) {
        auto out = open_out(svg_path);
        render_circles(out, centers, g, radius);
      }
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
