#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanroute/tree.hpp"

namespace spanroute {

class SpannerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EdgeKind { kTree, kShortcut };

struct SpannerEdge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  double weight = 0.0;
  EdgeKind kind = EdgeKind::kTree;
};

struct Adjacent {
  Vertex vertex = kNoVertex;
  double weight = 0.0;
  EdgeKind kind = EdgeKind::kTree;
};

/// Tree edges plus shortcut edges. Every edge weight is the tree distance of
/// its endpoints; a shortcut that coincides with a tree edge is stored once,
/// as a tree edge.
class SpannerGraph {
 public:
  SpannerGraph() = default;
  explicit SpannerGraph(const RootedTree& tree);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const SpannerEdge> edges() const noexcept { return edges_; }
  std::span<const Adjacent> neighbours(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbours(v).size(); }
  std::size_t max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;
  double total_weight() const;

  /// Adds a shortcut unless u == v or the pair is already adjacent.
  /// Returns whether an edge was added.
  bool add_shortcut(Vertex u, Vertex v, double weight);

 private:
  std::vector<SpannerEdge> edges_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

/// One subtree processed by the recursive construction.
struct CanonicalSubtree {
  /// Address in the recursion: the parent's sequence plus this subtree's
  /// 1-based position among its siblings. Empty for the input tree.
  std::vector<int> sequence;
  Vertex root = kNoVertex;
  Vertex leftmost = kNoVertex;
  /// Members in ascending post-order rank.
  std::vector<Vertex> vertices;
  /// Cut vertices, ascending rank.
  std::vector<Vertex> cut;
  /// 0 when every vertex is cut (small subtree), else ceil(size / k).
  std::size_t balance = 0;
  std::optional<std::size_t> parent;
  /// Indices of the subtrees left after removing the cut vertices, ordered by
  /// ascending rank of their roots.
  std::vector<std::size_t> children;

  std::size_t size() const noexcept { return vertices.size(); }
};

/// The hierarchy of canonical subtrees. Index 0 is the input tree.
class CanonicalDecomposition {
 public:
  std::span<const CanonicalSubtree> subtrees() const noexcept {
    return subtrees_;
  }
  const CanonicalSubtree& subtree(std::size_t i) const { return subtrees_.at(i); }
  /// The subtree whose cut set contains v.
  std::size_t owner(Vertex v) const;
  const std::vector<int>& sequence(Vertex v) const;
  /// Longest canonical sequence over all vertices.
  std::size_t max_sequence_length() const;
  std::size_t vertex_count() const noexcept { return owner_.size(); }

 private:
  friend struct SpannerBuilder;
  std::vector<CanonicalSubtree> subtrees_;
  std::vector<std::size_t> owner_;
};

/// First vertex w on the leftmost path from v with
/// size(leftmost child of w inside the subtree) <= subtree_size - balance,
/// where the subtree is {x : in_subtree[x]} and sizes are counted inside it.
/// A vertex whose leftmost child is missing counts that child as size 0.
std::optional<Vertex> first_balanced_on_leftmost_path(
    const RootedTree& tree, std::span<const char> in_subtree, Vertex v,
    std::size_t balance);

/// Cut vertices of the connected subtree marked by in_subtree for parameter
/// k: every member when 2k >= n' - 2, otherwise the recursive balanced set
/// with balance ceil(n'/k) plus the subtree's root and leftmost vertex.
/// Returned in ascending rank.
std::vector<Vertex> cut_vertices(const RootedTree& tree,
                                 std::span<const char> in_subtree,
                                 std::size_t k);

struct SpannerResult {
  SpannerGraph graph;
  CanonicalDecomposition decomposition;
};

/// Recursive shortcutting: complete graph on the cut set of every canonical
/// subtree. Throws SpannerError when k < 4.
SpannerResult build_spanner(const RootedTree& tree, std::size_t k);

/// canonical_sequence(dec, v) == dec.sequence(v)
const std::vector<int>& canonical_sequence(const CanonicalDecomposition& dec,
                                           Vertex v);

/// `u v weight kind` lines, kind T or S.
void write_spanner(std::ostream& out, const SpannerGraph& graph);
/// `sequence | root | leftmost | cut list` lines; the empty sequence is "ε".
void write_decomposition(std::ostream& out, const CanonicalDecomposition& dec);
std::string format_sequence(const std::vector<int>& sequence);

}  // namespace spanroute
