#include "spanroute/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "spanroute/doubling.hpp"
#include "spanroute/generators.hpp"
#include "spanroute/labels.hpp"
#include "spanroute/oracles.hpp"
#include "spanroute/router.hpp"
#include "spanroute/spanner.hpp"

namespace spanroute {
namespace {

constexpr std::uint64_t kPairStream = 0x9e3779b97f4a7c15ULL;
// Sources whose full Dijkstra row is compared with tree distances.
constexpr std::size_t kSpannerOracleSources = 32;

std::vector<std::pair<int, int>> choose_pairs(const ExperimentConfig& cfg) {
  std::vector<std::pair<int, int>> out;
  const auto n = cfg.n;
  if (n < 2) return out;
  if (!cfg.pairs) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
      }
    }
    return out;
  }
  Rng rng(cfg.seed ^ kPairStream);
  for (std::size_t i = 0; i < *cfg.pairs; ++i) {
    const auto u = rng.below(n);
    auto v = rng.below(n - 1);
    if (v >= u) ++v;
    out.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return out;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fmt_param(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

Check make_check(std::string name, std::size_t violations, std::string what) {
  Check c;
  c.name = std::move(name);
  c.passed = violations == 0;
  if (!c.passed) c.detail = std::to_string(violations) + " " + what;
  return c;
}

StatsRow run_tree(const ExperimentConfig& cfg) {
  const auto shape = parse_tree_shape(cfg.generator);
  const RootedTree tree = generate_tree(*shape, cfg.n, cfg.seed, cfg.branching);
  const auto built = build_spanner(tree, cfg.k);
  const auto& graph = built.graph;
  const auto& dec = built.decomposition;
  const auto views = assign_labels(tree, graph);

  StatsRow row;
  row.param_name = "k";
  row.param = static_cast<double>(cfg.k);
  row.edges = graph.edge_count();
  const double tree_weight = tree.total_weight();
  row.lightness = tree_weight > 0.0 ? graph.total_weight() / tree_weight : 1.0;
  row.max_degree = graph.max_degree();
  row.input_max_degree = tree.max_degree();
  row.max_sequence = dec.max_sequence_length();
  const auto bits = label_storage_bits(views);
  row.max_label_bits = bits.empty() ? 0 : *std::max_element(bits.begin(), bits.end());

  const auto pairs = choose_pairs(cfg);
  row.pairs = pairs.size();
  const std::size_t envelope = hop_envelope(row.max_sequence);
  const std::size_t budget = hop_budget(row.max_sequence);
  std::size_t unreached = 0, inexact = 0, off_path = 0, audit_failures = 0,
              over_envelope = 0;
  double hop_sum = 0.0;
  double stretch_sum = 0.0;
  for (const auto& [u, v] : pairs) {
    RouteTrace trace;
    try {
      trace = simulate(views, u, v, budget);
    } catch (const RoutingError&) {
      ++unreached;
      continue;
    }
    const double d = tree.distance(u, v);
    const double stretch = d > 0.0 ? trace.total_weight / d : 1.0;
    row.max_stretch = std::max(row.max_stretch, stretch);
    stretch_sum += stretch;
    row.max_hops = std::max(row.max_hops, trace.hop_count());
    hop_sum += static_cast<double>(trace.hop_count());
    if (trace.hop_count() > envelope) ++over_envelope;
    if (!cfg.verify) continue;
    if (!relatively_equal(trace.total_weight, naive_tree_distance(tree, u, v))) {
      ++inexact;
    }
    const auto visited = trace.vertices();
    if (!is_subsequence(visited, naive_tree_path(tree, u, v))) ++off_path;
    if (!audit_trace(tree, dec, views, trace, u, v).ok()) ++audit_failures;
  }
  if (!pairs.empty()) {
    row.mean_hops = hop_sum / static_cast<double>(pairs.size());
    row.mean_stretch = stretch_sum / static_cast<double>(pairs.size());
  }

  const std::size_t delta = tree.max_degree();
  const std::size_t w = static_cast<std::size_t>(label_integer_bits(cfg.n));
  const double log_ratio =
      std::log2(static_cast<double>(cfg.n)) / std::log2(static_cast<double>(cfg.k));
  const double light_bound =
      static_cast<double>(cfg.k * cfg.k) * (log_ratio + 2.0) * kLightnessConstant;

  row.checks.push_back(make_check("reached", unreached, "routes failed"));
  row.checks.push_back(make_check("hop_envelope", over_envelope, "routes above 8K+4"));
  row.checks.push_back(make_check(
      "degree", row.max_degree > delta + cfg.k ? 1 : 0,
      "max degree " + std::to_string(row.max_degree) + " > " +
          std::to_string(delta + cfg.k)));
  row.checks.push_back(make_check(
      "edges", row.edges > cfg.n * (cfg.k + 2) ? 1 : 0,
      std::to_string(row.edges) + " edges > n(k+2)"));
  row.checks.push_back(make_check(
      "label_bits", row.max_label_bits > 2 * w * (delta + cfg.k + 2) ? 1 : 0,
      std::to_string(row.max_label_bits) + " bits > " +
          std::to_string(2 * w * (delta + cfg.k + 2))));
  row.checks.push_back(make_check("lightness", row.lightness > light_bound ? 1 : 0,
                                  "lightness " + fmt_double(row.lightness) +
                                      " > " + fmt_double(light_bound)));
  if (!cfg.verify) return row;

  row.checks.push_back(make_check("exact_weight", inexact, "inexact traces"));
  row.checks.push_back(make_check("subsequence", off_path, "traces off the tree path"));
  row.checks.push_back(make_check("audit", audit_failures, "traces failing the audit"));
  const auto cuts = check_cut_sets(tree, dec, cfg.k);
  row.checks.push_back(make_check("cut_size", cuts.oversized_cuts,
                                  "cut sets above k+1"));
  row.checks.push_back(make_check("shrinkage", cuts.oversized_children,
                                  "components above 2n'/k"));
  row.checks.push_back(make_check("partition", cuts.partition_errors,
                                  "partition errors"));
  if (cfg.n <= cfg.oracle_limit) {
    std::set<int> sources;
    for (const auto& p : pairs) {
      if (sources.size() >= kSpannerOracleSources) break;
      sources.insert(p.first);
    }
    if (sources.empty()) sources.insert(0);
    std::size_t stretched = 0;
    for (int s : sources) {
      const auto dist = shortest_paths_from(graph, s);
      for (std::size_t v = 0; v < cfg.n; ++v) {
        if (!relatively_equal(dist[v], tree.distance(s, static_cast<Vertex>(v)))) {
          ++stretched;
        }
      }
    }
    row.checks.push_back(make_check("one_spanner", stretched,
                                    "pairs with spanner distance != tree distance"));
  }
  return row;
}

StatsRow run_points(const ExperimentConfig& cfg) {
  PointMetric metric;
  if (cfg.generator == "explicit") {
    metric = PointMetric::explicit_matrix(generate_explicit_matrix(cfg.n, cfg.seed));
  } else {
    metric = PointMetric::euclidean(
        generate_points(*parse_point_shape(cfg.generator), cfg.n, cfg.seed));
  }
  const NetLevels levels = build_net_hierarchy(metric);
  const NetTree tree = NetTree::build(metric, levels, {cfg.gamma, cfg.k});
  const ExactDistanceLabeling labeling(metric);

  StatsRow row;
  row.param_name = "gamma";
  row.param = cfg.gamma;
  const auto h = tree.point_edges();
  row.edges = h.size();
  std::vector<std::size_t> degree(cfg.n, 0);
  double h_weight = 0.0;
  for (const auto& e : h) {
    ++degree[static_cast<std::size_t>(e.a)];
    ++degree[static_cast<std::size_t>(e.b)];
    h_weight += e.weight;
  }
  row.max_degree = *std::max_element(degree.begin(), degree.end());
  const double mst = cfg.n > 1 ? oracle_mst_weight(metric) : 0.0;
  row.lightness = mst > 0.0 ? h_weight / mst : 1.0;
  for (const auto& light : tree.light_subtrees()) {
    row.max_sequence = std::max(row.max_sequence,
                                light.spanner.decomposition.max_sequence_length());
  }
  for (const auto& b : doubling_label_bits(tree, labeling)) {
    row.max_label_bits = std::max(row.max_label_bits, b.routing_bits);
  }

  const auto pairs = choose_pairs(cfg);
  row.pairs = pairs.size();
  std::size_t unreached = 0, above_reference = 0, outside_interval = 0;
  double hop_sum = 0.0;
  double stretch_sum = 0.0;
  for (const auto& [p, q] : pairs) {
    DoublingTrace trace;
    try {
      trace = route_doubling(tree, labeling, p, q);
    } catch (const DoublingRoutingError&) {
      ++unreached;
      continue;
    }
    const double d = metric.distance(p, q);
    const double stretch = trace.total_weight / d;
    row.max_stretch = std::max(row.max_stretch, stretch);
    stretch_sum += stretch;
    row.max_hops = std::max(row.max_hops, trace.hop_count());
    hop_sum += static_cast<double>(trace.hop_count());
    if (!cfg.verify) continue;
    const double reference = reference_path_weight(tree, p, q);
    if (trace.total_weight > reference * (1.0 + 1e-9)) ++above_reference;
    const auto interval = cross_edge_target_interval(
        labeling.estimate(labeling.label(p), labeling.label(q)), cfg.gamma,
        labeling.delta(), tree.top_level());
    const int level = first_cross_edge_level(tree, p, q);
    if (level < interval.lo || level > interval.hi) ++outside_interval;
  }
  if (!pairs.empty()) {
    row.mean_hops = hop_sum / static_cast<double>(pairs.size());
    row.mean_stretch = stretch_sum / static_cast<double>(pairs.size());
  }

  row.checks.push_back(make_check("reached", unreached, "routes failed"));
  if (!cfg.verify) return row;
  row.checks.push_back(make_check("reference_path", above_reference,
                                  "traces heavier than the reference path"));
  row.checks.push_back(make_check("target_interval", outside_interval,
                                  "pairs joined outside [lo, hi]"));
  if (cfg.n <= cfg.oracle_limit) {
    auto net = check_net_levels(metric, levels);
    const auto structure = check_net_tree(tree);
    row.checks.push_back(make_check("net_levels",
                                    net.packing + net.covering + net.nesting +
                                        net.structure,
                                    "packing/covering/nesting violations"));
    row.checks.push_back(make_check("parent_distance", structure.parent,
                                    "parents beyond 2^{i+1}"));
    row.checks.push_back(make_check("cross_edges", structure.cross,
                                    "cross edges off the threshold graph"));
    row.checks.push_back(make_check("cross_monotone", structure.monotone,
                                    "cross edges lost at a higher level"));
    row.checks.push_back(make_check("climb_distance",
                                    structure.climb + structure.structure,
                                    "ancestors beyond 2*2^j or bad structure"));
  }
  return row;
}

}  // namespace

bool is_point_generator(const std::string& generator) {
  return parse_point_shape(generator).has_value() || generator == "explicit";
}

void validate(const ExperimentConfig& cfg) {
  if (!parse_tree_shape(cfg.generator) && !is_point_generator(cfg.generator)) {
    throw std::invalid_argument("unknown generator '" + cfg.generator + "'");
  }
  if (cfg.n < 1) throw std::invalid_argument("n must be at least 1");
  if (cfg.k < 4) throw std::invalid_argument("k must be at least 4");
  if (!(cfg.gamma > 4.0)) throw std::invalid_argument("gamma must exceed 4");
  if (cfg.branching < 1) throw std::invalid_argument("branching must be positive");
}

bool StatsRow::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

const Check* StatsRow::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool StatsReport::passed() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const StatsRow& r) { return r.passed(); });
}

std::vector<std::string> StatsReport::failures() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    for (const auto& c : r.checks) {
      if (c.passed) continue;
      out.push_back(c.name + " failed on " + r.generator + " n=" +
                    std::to_string(r.n) + " " + r.param_name + "=" +
                    fmt_param(r.param) + " seed=" + std::to_string(r.seed) +
                    ": " + c.detail);
    }
  }
  return out;
}

StatsRow run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  StatsRow row = is_point_generator(cfg.generator) ? run_points(cfg) : run_tree(cfg);
  row.generator = cfg.generator;
  row.seed = cfg.seed;
  row.n = cfg.n;
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

StatsReport run_sweep(const std::vector<ExperimentConfig>& configs) {
  StatsReport report;
  for (const auto& cfg : configs) report.rows.push_back(run_experiment(cfg));
  return report;
}

void write_report(std::ostream& out, const StatsReport& report, bool with_timing) {
  std::vector<std::string> check_names;
  for (const auto& r : report.rows) {
    for (const auto& c : r.checks) {
      if (std::find(check_names.begin(), check_names.end(), c.name) ==
          check_names.end()) {
        check_names.push_back(c.name);
      }
    }
  }
  out << "generator\tseed\tn\tparam\tvalue\tedges\tlightness\tmax_degree"
         "\tinput_max_degree\tmax_hops\tmean_hops\tmax_stretch\tmean_stretch"
         "\tmax_label_bits\tK\tpairs";
  if (with_timing) out << "\twall_ms";
  for (const auto& name : check_names) out << '\t' << name;
  out << '\n';
  for (const auto& r : report.rows) {
    out << r.generator << '\t' << r.seed << '\t' << r.n << '\t' << r.param_name
        << '\t' << fmt_param(r.param) << '\t' << r.edges << '\t'
        << fmt_double(r.lightness) << '\t' << r.max_degree << '\t'
        << (r.input_max_degree ? std::to_string(*r.input_max_degree) : "-")
        << '\t' << r.max_hops << '\t' << fmt_double(r.mean_hops) << '\t'
        << fmt_double(r.max_stretch) << '\t' << fmt_double(r.mean_stretch)
        << '\t' << r.max_label_bits << '\t' << r.max_sequence << '\t' << r.pairs;
    if (with_timing) out << '\t' << fmt_double(r.wall_ms);
    for (const auto& name : check_names) {
      const Check* c = r.check(name);
      out << '\t' << (c == nullptr ? "-" : c->passed ? "pass" : "FAIL");
    }
    out << '\n';
  }
}

GrowthCheck check_log_growth(
    const std::vector<std::pair<std::size_t, std::size_t>>& n_hops,
    double max_ratio) {
  GrowthCheck out;
  auto points = n_hops;
  std::sort(points.begin(), points.end());
  if (points.size() < 2) return out;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, hops] : points) {
    const double x = std::log2(static_cast<double>(n));
    const double y = static_cast<double>(hops);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  out.slope = denom > 0.0 ? (m * sxy - sx * sy) / denom : 0.0;

  for (std::size_t i = points.size() / 2; i + 1 < points.size(); ++i) {
    const auto [n0, h0] = points[i];
    const auto [n1, h1] = points[i + 1];
    if (n1 <= n0 || h0 == 0) continue;
    const double doublings =
        std::log2(static_cast<double>(n1) / static_cast<double>(n0));
    const double ratio =
        std::pow(static_cast<double>(h1) / static_cast<double>(h0), 1.0 / doublings);
    out.worst_doubling_ratio = std::max(out.worst_doubling_ratio, ratio);
  }
  out.passed = out.worst_doubling_ratio <= max_ratio;
  return out;
}

}  // namespace spanroute
