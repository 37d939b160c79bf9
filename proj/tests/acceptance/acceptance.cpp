// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when a criterion fails that is not listed in
// kKnownFailures. Known failures still print FAIL; they are structural
// (see README, "Known failures") and are kept as written rather than relaxed.
// A known failure that starts passing is reported as such.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spanroute/doubling.hpp"
#include "spanroute/experiment.hpp"
#include "spanroute/generators.hpp"
#include "spanroute/labels.hpp"
#include "spanroute/oracles.hpp"
#include "spanroute/router.hpp"
#include "spanroute/spanner.hpp"
#include "spanroute/tree_io.hpp"

namespace {

using namespace spanroute;
using Clock = std::chrono::steady_clock;

const std::set<int> kKnownFailures = {3, 4, 6};
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr double kTolerance = 1e-9;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  int id;
  bool passed;
  std::string text;
};
std::vector<Outcome> outcomes;

void report(int id, bool passed, const std::string& text) {
  outcomes.push_back({id, passed, text});
  std::fprintf(stderr, "criterion %d done\n", id);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------- trees

struct TreeInstance {
  std::string name;
  std::size_t n;
  std::size_t k;
  RootedTree tree;
  SpannerResult built;
  std::vector<LocalView> views;
};

TreeInstance make_tree(TreeShape shape, std::size_t n, std::size_t k,
                       std::uint64_t seed) {
  TreeInstance t{tree_shape_name(shape) + " n=" + std::to_string(n) +
                     " k=" + std::to_string(k) + " seed=" + std::to_string(seed),
                 n, k, generate_tree(shape, n, seed), {}, {}};
  t.built = build_spanner(t.tree, k);
  t.views = assign_labels(t.tree, t.built.graph);
  return t;
}

std::vector<std::pair<Vertex, Vertex>> tree_pairs(std::size_t n, std::size_t count,
                                                  std::uint64_t seed) {
  std::vector<std::pair<Vertex, Vertex>> out;
  if (count == 0) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v) out.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
    return out;
  }
  Rng rng(seed * 7919 + 17);
  while (out.size() < count) {
    const auto u = static_cast<Vertex>(rng.below(n));
    const auto v = static_cast<Vertex>(rng.below(n));
    if (u != v) out.emplace_back(u, v);
  }
  return out;
}

struct RoutingTally {
  std::size_t routes = 0;
  std::size_t failures = 0;
  std::size_t inexact = 0;
  std::size_t off_path = 0;
  std::size_t over_envelope = 0;
  std::size_t max_hops = 0;
};

void route_all(const TreeInstance& t, const std::vector<std::pair<Vertex, Vertex>>& pairs,
               RoutingTally& tally, bool check_path) {
  const auto K = t.built.decomposition.max_sequence_length();
  for (const auto& [u, v] : pairs) {
    ++tally.routes;
    RouteTrace trace;
    try {
      trace = simulate(t.views, u, v, hop_budget(K));
    } catch (const RoutingError&) {
      ++tally.failures;
      continue;
    }
    if (!relatively_equal(trace.total_weight, naive_tree_distance(t.tree, u, v),
                          kTolerance)) {
      ++tally.inexact;
    }
    if (check_path) {
      const auto visited = trace.vertices();
      if (!is_subsequence(visited, naive_tree_path(t.tree, u, v))) ++tally.off_path;
    }
    tally.max_hops = std::max(tally.max_hops, trace.hop_count());
    if (trace.hop_count() > hop_envelope(K)) ++tally.over_envelope;
  }
}

// ---------------------------------------------------------------- points

PointMetric make_metric(const std::string& generator, std::size_t n,
                        std::uint64_t seed) {
  if (generator == "explicit") {
    return PointMetric::explicit_matrix(generate_explicit_matrix(n, seed));
  }
  return PointMetric::euclidean(generate_points(*parse_point_shape(generator), n, seed));
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();

  // Criteria 1 and 2: random recursive trees, n in {100, 500, 2000},
  // k in {4, 8, 16}; 2000 sampled pairs, all ordered pairs at n = 100.
  std::vector<TreeInstance> routed;
  {
    const auto start = Clock::now();
    RoutingTally tally;
    std::size_t exhaustive_routes = 0;
    std::size_t exhaustive_off_path = 0;
    for (auto seed : kSeeds) {
      for (std::size_t n : {100u, 500u, 2000u}) {
        for (std::size_t k : {4u, 8u, 16u}) {
          routed.push_back(make_tree(TreeShape::kRandomRecursive, n, k, seed));
          const auto pairs = tree_pairs(n, n == 100 ? 0 : 2000, seed);
          const std::size_t before = tally.off_path;
          route_all(routed.back(), pairs, tally, true);
          if (n == 100) {
            exhaustive_routes += pairs.size();
            exhaustive_off_path += tally.off_path - before;
          }
        }
      }
    }
    const double elapsed = seconds_since(start);
    report(1, tally.failures == 0 && tally.inexact == 0 && elapsed <= 60.0,
           "exact routing: " + std::to_string(tally.routes) + " routes, " +
               std::to_string(tally.inexact + tally.failures) +
               " inexact or failed, " + fmt("%.1f", elapsed) + " s (limit 60 s)");
    report(2, tally.off_path == 0,
           "subsequence of tree path: " + std::to_string(tally.off_path) +
               " violations over " + std::to_string(tally.routes) +
               " routes (" + std::to_string(exhaustive_routes) +
               " exhaustive at n=100, " + std::to_string(exhaustive_off_path) +
               " violations there)");
  }

  // Shapes for the structural criteria.
  std::vector<TreeInstance> shapes;
  for (TreeShape shape : {TreeShape::kPath, TreeShape::kStar, TreeShape::kCaterpillar,
                          TreeShape::kBalanced}) {
    for (std::size_t n : {128u, 1024u, 8192u}) {
      for (std::size_t k : {4u, 8u, 16u}) shapes.push_back(make_tree(shape, n, k, 1));
    }
  }
  std::vector<const TreeInstance*> all_trees;
  for (const auto& t : routed) all_trees.push_back(&t);
  for (const auto& t : shapes) all_trees.push_back(&t);

  // Criterion 3: cut sets and shrinkage in every canonical subtree.
  {
    std::size_t subtrees = 0, oversized = 0, shrink = 0, partition = 0, largest = 0;
    std::string first_bad;
    for (const auto* t : all_trees) {
      const auto c = check_cut_sets(t->tree, t->built.decomposition, t->k);
      subtrees += c.subtrees;
      oversized += c.oversized_cuts;
      shrink += c.oversized_children;
      partition += c.partition_errors;
      largest = std::max(largest, c.largest_cut);
      if (first_bad.empty() && c.oversized_cuts + c.oversized_children > 0) {
        first_bad = ", first on " + t->name;
      }
    }
    report(3, oversized + shrink + partition == 0,
           "cut sets: " + std::to_string(subtrees) + " subtrees, " +
               std::to_string(oversized) + " with |C| > k+1, " +
               std::to_string(shrink) + " components > 2n'/k, " +
               std::to_string(partition) + " partition errors" + first_bad);
  }

  // Criterion 5: hop envelope on every routed instance plus the size sweep.
  {
    RoutingTally tally;
    for (const auto& t : routed) {
      route_all(t, tree_pairs(t.n, 300, 99), tally, false);
    }
    std::vector<std::pair<std::size_t, std::size_t>> sweep;
    std::string series;
    for (std::size_t e = 7; e <= 13; ++e) {
      const std::size_t n = std::size_t{1} << e;
      std::size_t hops = 0;
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto t = make_tree(TreeShape::kRandomRecursive, n, 4, seed);
        RoutingTally local;
        route_all(t, tree_pairs(n, 2000, seed), local, false);
        tally.failures += local.failures;
        tally.over_envelope += local.over_envelope;
        hops = std::max(hops, local.max_hops);
      }
      sweep.emplace_back(n, hops);
      series += (series.empty() ? "" : " ") + std::to_string(hops);
    }
    const auto growth = check_log_growth(sweep);
    report(5, tally.failures == 0 && tally.over_envelope == 0 && growth.passed,
           "hops: " + std::to_string(tally.over_envelope) +
               " routes above 8K+4; max hops for n=2^7..2^13: " + series +
               "; slope " + fmt("%.2f", growth.slope) + " per log2 n, worst ratio " +
               fmt("%.2f", growth.worst_doubling_ratio) + " per doubling (limit 1.50)");
  }

  // Criteria 4, 6, 7: degree, edges, label bits, lightness on every tree.
  {
    std::size_t degree_bad = 0, edge_bad = 0, bits_bad = 0, light_bad = 0;
    std::string degree_first, bits_first;
    double worst_light = 0.0;
    for (const auto* t : all_trees) {
      const std::size_t delta = t->tree.max_degree();
      if (t->built.graph.max_degree() > delta + t->k) {
        if (degree_first.empty()) {
          degree_first = ", e.g. " + t->name + ": " +
                         std::to_string(t->built.graph.max_degree()) + " > " +
                         std::to_string(delta + t->k);
        }
        ++degree_bad;
      }
      if (t->built.graph.edge_count() > t->n * (t->k + 2)) ++edge_bad;
      const auto w = static_cast<std::size_t>(label_integer_bits(t->n));
      const auto bits = label_storage_bits(t->views);
      const auto most = *std::max_element(bits.begin(), bits.end());
      if (most > 2 * w * (delta + t->k + 2)) {
        if (bits_first.empty()) {
          bits_first = ", e.g. " + t->name + ": " + std::to_string(most) +
                       " > " + std::to_string(2 * w * (delta + t->k + 2));
        }
        ++bits_bad;
      }
      const double lightness = t->built.graph.total_weight() / t->tree.total_weight();
      const double kk = static_cast<double>(t->k);
      const double scale =
          kk * kk * (std::log2(static_cast<double>(t->n)) / std::log2(kk) + 2.0);
      worst_light = std::max(worst_light, lightness / scale);
      if (lightness > scale * kLightnessConstant) ++light_bad;
    }
    const auto count = std::to_string(all_trees.size());
    report(4, degree_bad + edge_bad == 0,
           "degree <= Delta+k failed on " + std::to_string(degree_bad) + "/" +
               count + " instances" + degree_first + "; |E| <= n(k+2) failed on " +
               std::to_string(edge_bad));
    report(6, bits_bad == 0,
           "label bits <= 2w(Delta+k+2) failed on " + std::to_string(bits_bad) +
               "/" + count + " instances" + bits_first);
    report(7, light_bad == 0,
           "lightness: max wt(G)/wt(T) / (k^2 (log_k n + 2)) = " +
               fmt("%.4f", worst_light) + ", frozen C = " +
               fmt("%.2f", kLightnessConstant) + ", " + std::to_string(light_bad) +
               " above");
  }


  // Criterion 8: net-tree structure, exhaustive.
  {
    const auto start = Clock::now();
    std::size_t violations = 0, instances = 0;
    for (const char* gen : {"grid-points", "uniform-points"}) {
      for (std::size_t n : {64u, 256u, 1024u}) {
        for (double gamma : {8.0, 16.0}) {
          const auto metric = make_metric(gen, n, 1);
          const auto levels = build_net_hierarchy(metric);
          const auto tree = NetTree::build(metric, levels, {gamma, 4});
          violations += check_net_levels(metric, levels).total() +
                        check_net_tree(tree).total();
          ++instances;
        }
      }
    }
    const double elapsed = seconds_since(start);
    report(8, violations == 0 && elapsed <= 120.0,
           "net trees: " + std::to_string(violations) + " packing/covering/parent/"
               "cross/monotone/climb violations over " + std::to_string(instances) +
               " instances, " + fmt("%.1f", elapsed) + " s (limit 120 s)");
  }

  // Criterion 9: first cross-edge level inside [lo, hi], all pairs, n <= 256.
  {
    std::size_t pairs = 0, outside = 0, widest = 0;
    for (const char* gen : {"grid-points", "uniform-points", "explicit"}) {
      for (std::size_t n : {64u, 256u}) {
        for (double gamma : {8.0, 16.0}) {
          const auto metric = make_metric(gen, n, 1);
          const auto tree = NetTree::build(metric, build_net_hierarchy(metric), {gamma, 4});
          const ExactDistanceLabeling labels(metric);
          for (Point p = 0; p < static_cast<Point>(n); ++p) {
            for (Point q = p + 1; q < static_cast<Point>(n); ++q) {
              const auto in = cross_edge_target_interval(
                  labels.estimate(labels.label(p), labels.label(q)), gamma,
                  labels.delta(), tree.top_level());
              const int level = first_cross_edge_level(tree, p, q);
              widest = std::max(widest, static_cast<std::size_t>(in.hi - in.lo));
              ++pairs;
              if (level < in.lo || level > in.hi) ++outside;
            }
          }
        }
      }
    }
    report(9, outside == 0,
           "cross-edge interval: " + std::to_string(outside) + " of " +
               std::to_string(pairs) + " pairs outside [lo, hi], widest interval " +
               std::to_string(widest));
  }

  // Criterion 10: doubling routing no heavier than the reference path.
  {
    std::map<double, double> max_stretch;
    std::size_t routes = 0, heavier = 0, failed = 0;
    std::string per_n;
    for (double gamma : {8.0, 16.0}) {
      for (std::size_t n : {64u, 256u, 1024u}) {
        const auto metric = make_metric("uniform-points", n, 1);
        const auto tree = NetTree::build(metric, build_net_hierarchy(metric), {gamma, 4});
        const ExactDistanceLabeling labels(metric);
        Rng rng(n * 31 + 7);
        double local = 0.0;
        for (int i = 0; i < 500; ++i) {
          const auto p = static_cast<Point>(rng.below(n));
          auto q = static_cast<Point>(rng.below(n - 1));
          if (q >= p) ++q;
          ++routes;
          DoublingTrace trace;
          try {
            trace = route_doubling(tree, labels, p, q);
          } catch (const DoublingRoutingError&) {
            ++failed;
            continue;
          }
          if (trace.total_weight > reference_path_weight(tree, p, q) * (1.0 + kTolerance)) {
            ++heavier;
          }
          local = std::max(local, trace.total_weight / metric.distance(p, q));
        }
        max_stretch[gamma] = std::max(max_stretch[gamma], local);
        per_n += " n=" + std::to_string(n) + "/gamma=" + fmt("%g", gamma) + ":" +
                 fmt("%.3f", local);
      }
    }
    const bool decreasing = max_stretch[16.0] < max_stretch[8.0];
    report(10, heavier == 0 && failed == 0 && decreasing,
           std::to_string(heavier) + " of " + std::to_string(routes) +
               " routes heavier than the reference path, " + std::to_string(failed) +
               " failed; max stretch gamma=8 " + fmt("%.3f", max_stretch[8.0]) +
               ", gamma=16 " + fmt("%.3f", max_stretch[16.0]) + ";" + per_n);
  }

  // Criterion 11: doubling hop growth over a point-set sweep.
  {
    std::vector<std::pair<std::size_t, std::size_t>> sweep;
    std::string series;
    for (std::size_t e = 6; e <= 11; ++e) {
      const std::size_t n = std::size_t{1} << e;
      const auto metric = make_metric("uniform-points", n, 1);
      const auto tree = NetTree::build(metric, build_net_hierarchy(metric), {8.0, 4});
      const ExactDistanceLabeling labels(metric);
      Rng rng(n * 131 + 3);
      std::size_t hops = 0;
      for (int i = 0; i < 500; ++i) {
        const auto p = static_cast<Point>(rng.below(n));
        auto q = static_cast<Point>(rng.below(n - 1));
        if (q >= p) ++q;
        hops = std::max(hops, route_doubling(tree, labels, p, q).hop_count());
      }
      sweep.emplace_back(n, hops);
      series += (series.empty() ? "" : " ") + std::to_string(hops);
    }
    const auto growth = check_log_growth(sweep);
    report(11, growth.passed,
           "doubling hops for n=2^6..2^11: " + series + "; slope " +
               fmt("%.2f", growth.slope) + " per log2 n, worst ratio " +
               fmt("%.2f", growth.worst_doubling_ratio) + " per doubling (limit 1.50)");
  }

  // Criterion 12: repeated seeded runs are byte-identical.
  {
    auto run_once = [] {
      std::ostringstream out;
      std::vector<ExperimentConfig> configs;
      for (const char* gen : {"random-recursive-tree", "caterpillar", "grid-points",
                              "uniform-points", "explicit"}) {
        ExperimentConfig cfg;
        cfg.generator = gen;
        cfg.n = 200;
        cfg.seed = 42;
        cfg.pairs = 300;
        configs.push_back(cfg);
      }
      write_report(out, run_sweep(configs));
      const auto t = make_tree(TreeShape::kRandomRecursive, 300, 4, 42);
      write_tree(out, t.tree);
      write_spanner(out, t.built.graph);
      write_decomposition(out, t.built.decomposition);
      write_views(out, t.views);
      for (const auto& [u, v] : tree_pairs(300, 50, 42)) {
        write_trace(out, simulate(t.views, u, v,
                                  hop_budget(t.built.decomposition.max_sequence_length())));
      }
      const auto metric = make_metric("uniform-points", 200, 42);
      const auto net = NetTree::build(metric, build_net_hierarchy(metric), {8.0, 4});
      write_net_tree(out, net);
      return out.str();
    };
    const auto a = run_once();
    const auto b = run_once();
    report(12, a == b,
           "two seeded runs " + std::string(a == b ? "byte-identical" : "differ") +
               " (" + std::to_string(a.size()) + " bytes)");
  }

  std::sort(outcomes.begin(), outcomes.end(),
            [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  for (const auto& o : outcomes) {
    std::printf("criterion %2d %s  %s\n", o.id, o.passed ? "PASS" : "FAIL",
                o.text.c_str());
  }
  std::size_t unexpected = 0;
  std::printf("\nsummary: ");
  for (const auto& o : outcomes) {
    const bool known = kKnownFailures.count(o.id) > 0;
    if (!o.passed && !known) ++unexpected;
    if (o.passed && known) {
      std::printf("[criterion %d listed as known failure but passed] ", o.id);
    }
  }
  const auto passed = std::count_if(outcomes.begin(), outcomes.end(),
                                    [](const Outcome& o) { return o.passed; });
  std::printf("%zu/%zu passed, %zu unexpected failures, known failures:",
              static_cast<std::size_t>(passed), outcomes.size(), unexpected);
  for (int id : kKnownFailures) std::printf(" %d", id);
  std::printf(", %.1f s\n", seconds_since(suite_start));
  return unexpected == 0 ? 0 : 1;
}
