#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spanroute {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

struct TreeEdge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  double weight = 0.0;
};

enum class TreeErrorKind {
  kCycle,
  kDisconnected,
  kNonpositiveWeight,
  kDuplicateEdge,
  kUnknownVertex,
  kParse,
};

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  TreeErrorKind kind() const noexcept { return kind_; }

 private:
  TreeErrorKind kind_;
};

struct TreeBuildOptions {
  // Net-tree levels can connect two nodes that share a representative point;
  // those edges have length zero. Ordinary input trees must be strictly
  // positive.
  bool allow_zero_weights = false;
};

/// Weighted rooted tree with vertices 0..n-1.
///
/// Children are ordered largest subtree first, ties broken by ascending
/// vertex id. Ranks are 1-based post-order positions under that ordering, and
/// low(v) is the smallest rank in the subtree of v, so a vertex w lies in the
/// subtree of v exactly when low(v) <= rank(w) <= rank(v).
///
/// Immutable after construction.
class RootedTree {
 public:
  RootedTree() = default;

  /// Builds from an undirected edge list. The vertex count is one more than
  /// the largest id mentioned (root included).
  static RootedTree build(std::span<const TreeEdge> edges, Vertex root,
                          TreeBuildOptions options = {});
  static RootedTree build(std::size_t vertex_count,
                          std::span<const TreeEdge> edges, Vertex root,
                          TreeBuildOptions options = {});

  std::size_t size() const noexcept { return parent_.size(); }
  Vertex root() const noexcept { return root_; }

  Vertex parent(Vertex v) const { return parent_[checked(v)]; }
  /// Weight of the edge to the parent; 0 for the root.
  double parent_weight(Vertex v) const { return parent_weight_[checked(v)]; }
  std::span<const Vertex> children(Vertex v) const;
  std::size_t subtree_size(Vertex v) const { return subtree_size_[checked(v)]; }
  int rank(Vertex v) const { return rank_[checked(v)]; }
  int low(Vertex v) const { return low_[checked(v)]; }
  /// Number of edges from the root.
  int depth(Vertex v) const { return depth_[checked(v)]; }
  Vertex vertex_at_rank(int rank) const;
  std::size_t degree(Vertex v) const;
  std::size_t max_degree() const;

  /// True when a is an ancestor of v. Every vertex is its own ancestor.
  bool is_ancestor(Vertex a, Vertex v) const;

  double distance(Vertex u, Vertex v) const;
  Vertex lca(Vertex u, Vertex v) const;
  Vertex leftmost_descendant(Vertex v) const;

  /// Vertices of the u-v path in order, both endpoints included.
  std::vector<Vertex> path(Vertex u, Vertex v) const;

  /// Sum of all edge weights.
  double total_weight() const;

  /// One (parent, child, weight) entry per non-root vertex, in preorder.
  std::vector<TreeEdge> edges() const;

 private:
  std::size_t checked(Vertex v) const;

  Vertex root_ = kNoVertex;
  std::vector<Vertex> parent_;
  std::vector<double> parent_weight_;
  std::vector<std::size_t> child_offset_;
  std::vector<Vertex> child_list_;
  std::vector<std::size_t> subtree_size_;
  std::vector<int> rank_;
  std::vector<int> low_;
  std::vector<int> depth_;
  std::vector<Vertex> by_rank_;
  // ancestors_[j][v] is the 2^j-th ancestor of v, or the root.
  std::vector<std::vector<Vertex>> ancestors_;
};

}  // namespace spanroute
