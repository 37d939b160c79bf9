#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spanroute/doubling.hpp"
#include "spanroute/experiment.hpp"
#include "spanroute/generators.hpp"
#include "spanroute/labels.hpp"
#include "spanroute/metric.hpp"
#include "spanroute/router.hpp"
#include "spanroute/spanner.hpp"
#include "spanroute/tree_io.hpp"

namespace {

using namespace spanroute;

// Writes to the named file, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

template <typename Write>
void write_if(const std::string& path, Write write) {
  if (path.empty()) return;
  Output out(path);
  write(out.stream());
}

int index_of(const std::vector<std::string>& ids, const std::string& name) {
  const auto it = std::find(ids.begin(), ids.end(), name);
  if (it == ids.end()) throw std::invalid_argument("unknown id '" + name + "'");
  return static_cast<int>(it - ids.begin());
}

struct SweepFlags {
  std::vector<std::string> generator{"random-recursive-tree"};
  std::vector<std::size_t> n{100};
  std::vector<std::size_t> k{4};
  std::vector<double> gamma{8.0};
  std::vector<std::uint64_t> seed{1};
  std::optional<std::size_t> pairs;
  bool all_pairs = false;
  std::size_t branching = 2;
  std::size_t oracle_limit = 2000;
  std::string out;

  void attach(CLI::App* app, bool lists) {
    auto list = [&](CLI::Option* o) {
      if (lists) o->delimiter(',');
      else o->expected(1);
      return o;
    };
    list(app->add_option("-g,--generator", generator,
                         "random-recursive-tree, path, star, caterpillar, "
                         "balanced-b-ary, grid-points, uniform-points, explicit")
             ->capture_default_str());
    list(app->add_option("-n,--n", n, "instance size")->capture_default_str());
    list(app->add_option("-k,--k", k, "spanner parameter (>= 4)")->capture_default_str());
    list(app->add_option("--gamma", gamma, "cross-edge factor (> 4)")->capture_default_str());
    list(app->add_option("-s,--seed", seed, "64-bit seed")->capture_default_str());
    app->add_option("--pairs", pairs, "sampled ordered pairs (default: all)");
    app->add_flag("--all-pairs", all_pairs, "route every ordered pair");
    app->add_option("--branching", branching, "balanced-b-ary branching")
        ->capture_default_str();
    app->add_option("--oracle-limit", oracle_limit,
                    "largest n for the quadratic oracles")
        ->capture_default_str();
    app->add_option("-o,--out", out, "report file (default stdout)");
  }

  // Trees sweep k, point sets sweep gamma with the first k.
  std::vector<ExperimentConfig> configs(bool verify) const {
    std::vector<ExperimentConfig> out_configs;
    for (const auto& g : generator) {
      const bool points = is_point_generator(g);
      const std::size_t params = points ? gamma.size() : k.size();
      for (auto s : seed) {
        for (auto size : n) {
          for (std::size_t i = 0; i < params; ++i) {
            ExperimentConfig cfg;
            cfg.generator = g;
            cfg.n = size;
            cfg.k = points ? k.front() : k[i];
            cfg.gamma = points ? gamma[i] : gamma.front();
            cfg.seed = s;
            cfg.pairs = all_pairs ? std::nullopt : pairs;
            cfg.branching = branching;
            cfg.verify = verify;
            cfg.oracle_limit = oracle_limit;
            validate(cfg);
            out_configs.push_back(cfg);
          }
        }
      }
    }
    return out_configs;
  }
};

int finish(const StatsReport& report, const std::string& out, bool timing) {
  {
    Output o(out);
    write_report(o.stream(), report, timing);
  }
  const auto failures = report.failures();
  for (const auto& f : failures) std::cerr << "spanroute: " << f << '\n';
  return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-metric 1-spanners, interval-label routing and net-tree "
               "routing for doubling metrics"};
  app.require_subcommand(1);

  // gen-tree
  auto* gen_tree = app.add_subcommand("gen-tree", "write a generated tree");
  std::string tree_generator = "random-recursive-tree";
  std::size_t gen_n = 100;
  std::uint64_t gen_seed = 1;
  std::size_t gen_branching = 2;
  std::string gen_out;
  gen_tree->add_option("-g,--generator", tree_generator)->capture_default_str();
  gen_tree->add_option("-n,--n", gen_n)->capture_default_str();
  gen_tree->add_option("-s,--seed", gen_seed)->capture_default_str();
  gen_tree->add_option("--branching", gen_branching)->capture_default_str();
  gen_tree->add_option("-o,--out", gen_out, "output file (default stdout)");

  // gen-points
  auto* gen_points = app.add_subcommand("gen-points", "write a generated point set");
  std::string point_generator = "uniform-points";
  gen_points->add_option("-g,--generator", point_generator,
                         "grid-points, uniform-points or explicit")
      ->capture_default_str();
  gen_points->add_option("-n,--n", gen_n)->capture_default_str();
  gen_points->add_option("-s,--seed", gen_seed)->capture_default_str();
  gen_points->add_option("-o,--out", gen_out, "output file (default stdout)");

  // build
  auto* build = app.add_subcommand("build", "build a spanner and dump it");
  std::string tree_file, points_file;
  std::size_t k = 4;
  double gamma = 8.0;
  std::string spanner_out, decomposition_out, labels_out, views_out, net_out;
  auto* input = build->add_option_group("input");
  input->add_option("--tree", tree_file, "tree file");
  input->add_option("--points", points_file, "points file");
  input->require_option(1);
  build->add_option("-k,--k", k)->capture_default_str();
  build->add_option("--gamma", gamma)->capture_default_str();
  build->add_option("--spanner", spanner_out, "edge list (tree input)");
  build->add_option("--decomposition", decomposition_out,
                    "canonical subtrees (tree input)");
  build->add_option("--labels", labels_out, "interval labels (tree input)");
  build->add_option("--views", views_out, "neighbour tables (tree input)");
  build->add_option("--net", net_out, "net-tree dump (points input)");

  // route
  auto* route = app.add_subcommand("route", "route one message and print the trace");
  std::string from, to;
  auto* route_input = route->add_option_group("input");
  route_input->add_option("--tree", tree_file, "tree file");
  route_input->add_option("--points", points_file, "points file");
  route_input->require_option(1);
  route->add_option("-k,--k", k)->capture_default_str();
  route->add_option("--gamma", gamma)->capture_default_str();
  route->add_option("--from", from, "source id as written in the file")->required();
  route->add_option("--to", to, "destination id")->required();

  // verify / bench / report
  auto* verify = app.add_subcommand("verify", "run one instance with every oracle check");
  SweepFlags verify_flags;
  verify_flags.attach(verify, false);
  auto* bench = app.add_subcommand("bench", "time instances without oracle checks");
  SweepFlags bench_flags;
  bench_flags.attach(bench, true);
  auto* report = app.add_subcommand("report", "sweep sizes, parameters and seeds");
  SweepFlags report_flags;
  report_flags.attach(report, true);
  bool report_timing = false;
  report->add_flag("--timing", report_timing, "add a wall-time column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_tree) {
      const auto shape = parse_tree_shape(tree_generator);
      if (!shape) throw std::invalid_argument("unknown tree generator '" + tree_generator + "'");
      Output out(gen_out);
      write_tree(out.stream(), generate_tree(*shape, gen_n, gen_seed, gen_branching));
      return 0;
    }
    if (*gen_points) {
      Output out(gen_out);
      if (point_generator == "explicit") {
        const auto m = generate_explicit_matrix(gen_n, gen_seed);
        out.stream() << gen_n << '\n';
        for (const auto& row : m) {
          for (std::size_t j = 0; j < row.size(); ++j) {
            out.stream() << (j ? " " : "") << format_weight(row[j]);
          }
          out.stream() << '\n';
        }
        return 0;
      }
      const auto shape = parse_point_shape(point_generator);
      if (!shape) throw std::invalid_argument("unknown point generator '" + point_generator + "'");
      write_points(out.stream(), generate_points(*shape, gen_n, gen_seed));
      return 0;
    }
    if (*build) {
      if (!tree_file.empty()) {
        const auto parsed = read_tree_file(tree_file);
        const auto built = build_spanner(parsed.tree, k);
        const auto views = assign_labels(parsed.tree, built.graph);
        write_if(spanner_out, [&](std::ostream& o) { write_spanner(o, built.graph); });
        write_if(decomposition_out,
                 [&](std::ostream& o) { write_decomposition(o, built.decomposition); });
        write_if(labels_out, [&](std::ostream& o) { write_labels(o, views); });
        write_if(views_out, [&](std::ostream& o) { write_views(o, views); });
        std::cout << "vertices " << parsed.tree.size() << "\nedges "
                  << built.graph.edge_count() << "\nmax_degree "
                  << built.graph.max_degree() << "\ntree_max_degree "
                  << parsed.tree.max_degree() << "\nsubtrees "
                  << built.decomposition.subtrees().size() << "\nK "
                  << built.decomposition.max_sequence_length() << '\n';
        return 0;
      }
      const auto parsed = read_points_file(points_file);
      const auto levels = build_net_hierarchy(parsed.metric);
      const auto tree = NetTree::build(parsed.metric, levels, {gamma, k});
      write_if(net_out, [&](std::ostream& o) { write_net_tree(o, tree); });
      std::cout << "points " << parsed.metric.size() << "\nnodes "
                << tree.node_count() << "\ntop_level " << tree.top_level()
                << "\nlight_level " << tree.light_level() << "\nlight_subtrees "
                << tree.light_subtrees().size() << "\nedges "
                << tree.point_edges().size() << '\n';
      return 0;
    }
    if (*route) {
      if (!tree_file.empty()) {
        const auto parsed = read_tree_file(tree_file);
        const auto built = build_spanner(parsed.tree, k);
        const auto views = assign_labels(parsed.tree, built.graph);
        const int u = index_of(parsed.external_ids, from);
        const int v = index_of(parsed.external_ids, to);
        const auto trace = simulate(views, u, v,
                                    hop_budget(built.decomposition.max_sequence_length()));
        write_trace(std::cout, trace);
        std::cout << "# weight " << format_weight(trace.total_weight)
                  << " tree_distance " << format_weight(parsed.tree.distance(u, v))
                  << " hops " << trace.hop_count() << '\n';
        return 0;
      }
      const auto parsed = read_points_file(points_file);
      const auto levels = build_net_hierarchy(parsed.metric);
      const auto tree = NetTree::build(parsed.metric, levels, {gamma, k});
      const ExactDistanceLabeling labeling(parsed.metric);
      const int p = index_of(parsed.external_ids, from);
      const int q = index_of(parsed.external_ids, to);
      const auto trace = route_doubling(tree, labeling, p, q);
      for (std::size_t i = 0; i < trace.moves.size(); ++i) {
        const auto& m = trace.moves[i];
        std::cout << i << ' ' << m.node << ' ' << parsed.external_ids[m.point] << ' '
                  << (i == 0 ? "-" : state_name(m.state)) << ' '
                  << format_weight(m.edge_weight) << ' '
                  << format_weight(m.cumulative_weight) << '\n';
      }
      // Distances are in normalised units (closest pair at 1).
      std::cout << "# weight " << format_weight(trace.total_weight) << " distance "
                << format_weight(parsed.metric.distance(p, q)) << " hops "
                << trace.hop_count() << " target_level " << trace.target_level << '\n';
      return 0;
    }
    if (*verify) {
      return finish(run_sweep(verify_flags.configs(true)), verify_flags.out, false);
    }
    if (*bench) {
      return finish(run_sweep(bench_flags.configs(false)), bench_flags.out, true);
    }
    if (*report) {
      return finish(run_sweep(report_flags.configs(true)), report_flags.out,
                    report_timing);
    }
  } catch (const std::exception& e) {
    std::cerr << "spanroute: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
