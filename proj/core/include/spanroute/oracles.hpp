#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spanroute/doubling.hpp"
#include "spanroute/metric.hpp"
#include "spanroute/spanner.hpp"
#include "spanroute/tree.hpp"

// Brute-force reference computations. Each one is deliberately simple and
// shares no code with the structure it checks.

namespace spanroute {

/// Dijkstra from `source` over the spanner graph.
std::vector<double> shortest_paths_from(const SpannerGraph& graph, Vertex source);
/// Throws std::runtime_error when v is unreachable from u.
double oracle_shortest_path(const SpannerGraph& graph, Vertex u, Vertex v);
/// Floyd-Warshall over the spanner graph; meant for n <= 100.
std::vector<std::vector<double>> all_pairs_matrix(const SpannerGraph& graph);

/// O(n^2) Prim over the complete metric graph. 0 for a single point.
double oracle_mst_weight(const PointMetric& metric);
/// Kruskal over all sorted pairs with union-find.
double kruskal_mst_weight(const PointMetric& metric);

/// Tree path by walking parent pointers from both ends.
std::vector<Vertex> naive_tree_path(const RootedTree& tree, Vertex u, Vertex v);
double naive_tree_distance(const RootedTree& tree, Vertex u, Vertex v);
/// Whether `sub` occurs in order (not necessarily contiguously) in `seq`.
bool is_subsequence(std::span<const Vertex> sub, std::span<const Vertex> seq);

struct CutSetCheck {
  std::size_t subtrees = 0;
  /// Non-base subtrees with more than k + 1 cut vertices.
  std::size_t oversized_cuts = 0;
  std::size_t largest_cut = 0;
  /// Child components with k * size > 2 * parent size.
  std::size_t oversized_children = 0;
  /// Vertices owned by zero or several cut sets, or components that are not
  /// connected subtrees.
  std::size_t partition_errors = 0;
};

CutSetCheck check_cut_sets(const RootedTree& tree,
                           const CanonicalDecomposition& dec, std::size_t k);

struct NetCheck {
  std::size_t packing = 0;      // kept pairs at distance <= 2^i
  std::size_t covering = 0;     // points of N_{i-1} farther than 2^i from N_i
  std::size_t nesting = 0;      // N_i not a subset of N_{i-1}
  std::size_t parent = 0;       // d(rep, parent rep) > 2^{i+1}
  std::size_t cross = 0;        // cross edges differing from the threshold graph
  std::size_t monotone = 0;     // cross edge at i missing at some j > i
  std::size_t climb = 0;        // d(p^(j), p) > 2 * 2^j
  std::size_t structure = 0;    // top not a singleton, leaves not a bijection

  std::size_t total() const noexcept {
    return packing + covering + nesting + parent + cross + monotone + climb +
           structure;
  }
};

NetCheck check_net_levels(const PointMetric& metric, const NetLevels& levels);
NetCheck check_net_tree(const NetTree& tree);

/// Lowest level where the ancestors of p and q share a cross edge, by
/// scanning ancestor pairs. -1 if they merge first.
int first_cross_edge_level(const NetTree& tree, Point p, Point q);
/// Lowest level where the ancestors of p and q are equal or cross-adjacent.
int first_joined_level(const NetTree& tree, Point p, Point q);
/// Climb from p to that level, cross if the ancestors differ, descend to q,
/// summing distances between consecutive representatives.
double reference_path_weight(const NetTree& tree, Point p, Point q);

}  // namespace spanroute
