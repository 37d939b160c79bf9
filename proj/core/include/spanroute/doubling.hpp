#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spanroute/labels.hpp"
#include "spanroute/metric.hpp"
#include "spanroute/spanner.hpp"
#include "spanroute/tree.hpp"

namespace spanroute {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

class NetTreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative slack on every radius comparison, so that d <= r holds when d
/// and r agree up to rounding.
inline constexpr double kRadiusSlack = 1e-12;
inline bool within_radius(double d, double r) {
  return d <= r * (1.0 + kRadiusSlack);
}

/// N_0 = all points, N_i a greedy 2^i-net of N_{i-1} (ascending point id),
/// up to the first singleton level. Each level is sorted by point id.
struct NetLevels {
  std::vector<std::vector<Point>> levels;
  std::size_t top() const noexcept { return levels.size() - 1; }
};

NetLevels build_net_hierarchy(const PointMetric& metric);

struct NetNode {
  int level = 0;
  Point rep = -1;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  /// Same-level nodes within gamma * 2^level, ascending id.
  std::vector<NodeId> cross;
  /// Index into NetTree::light_subtrees(), or -1 above the light level.
  int light = -1;
  /// Vertex id inside that light subtree.
  Vertex light_vertex = kNoVertex;
};

/// A net-tree subtree hanging at the light level, shortcut with the tree
/// 1-spanner and labelled for local routing. Edge weights are distances
/// between representatives, zero where consecutive nodes share a point.
struct LightSubtree {
  NodeId root = kNoNode;
  std::vector<NodeId> nodes;  // local vertex -> node
  RootedTree tree;
  SpannerResult spanner;
  std::vector<LocalView> views;
};

struct NetTreeParams {
  double gamma = 8.0;
  std::size_t k = 4;
};

/// Net tree with cross edges and light-subtree shortcuts.
class NetTree {
 public:
  /// Throws std::invalid_argument for gamma <= 4 or k < 4, NetTreeError when
  /// a node finds no covering parent.
  static NetTree build(const PointMetric& metric, const NetLevels& levels,
                       NetTreeParams params);

  const PointMetric& metric() const noexcept { return *metric_; }
  double gamma() const noexcept { return params_.gamma; }
  std::size_t k() const noexcept { return params_.k; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const NetNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const NetNode> nodes() const noexcept { return nodes_; }
  int top_level() const noexcept { return top_; }
  NodeId root() const noexcept { return root_; }
  std::span<const NodeId> level_nodes(int level) const;
  NodeId leaf(Point p) const { return leaves_.at(static_cast<std::size_t>(p)); }
  /// Nodes represented by p, lowest level first.
  std::span<const NodeId> nodes_of(Point p) const;

  /// Level at which light subtrees are rooted: ceil(log2(D / n)) clamped to
  /// [0, top], or top when D <= n.
  int light_level() const noexcept { return light_level_; }
  std::span<const LightSubtree> light_subtrees() const noexcept {
    return light_;
  }

  /// Post-order interval label over the whole net tree.
  IntervalLabel label(NodeId id) const;
  bool is_ancestor(NodeId a, NodeId v) const;
  NodeId ancestor_at(NodeId v, int level) const;
  double node_distance(NodeId a, NodeId b) const;
  bool has_cross_edge(NodeId a, NodeId b) const;
  /// The whole net tree as a weighted rooted tree (node ids as vertices).
  const RootedTree& as_tree() const noexcept { return global_; }

  /// Point-level spanner H: one entry per distinct unordered point pair
  /// joined by a tree, cross or shortcut edge.
  struct PointEdge {
    Point a = -1;
    Point b = -1;
    double weight = 0.0;
  };
  std::vector<PointEdge> point_edges() const;

 private:
  const PointMetric* metric_ = nullptr;
  NetTreeParams params_;
  int top_ = 0;
  NodeId root_ = kNoNode;
  int light_level_ = 0;
  std::vector<NetNode> nodes_;
  std::vector<std::size_t> level_offset_;
  // 0..node_count-1; levels are contiguous slices of it.
  std::vector<NodeId> node_ids_;
  std::vector<NodeId> leaves_;
  std::vector<std::size_t> point_offset_;
  std::vector<NodeId> point_nodes_;
  RootedTree global_;
  std::vector<LightSubtree> light_;
};

/// Level range that must contain the first level where the ancestors of two
/// points at estimated distance d_est are joined:
///   lo = floor(log2(d_est / ((gamma + 4)(1 + delta))))
///   hi = ceil(log2(d_est / (gamma - 4)))
/// both clamped to [0, top_level].
struct LevelInterval {
  int lo = 0;
  int hi = 0;
};
LevelInterval cross_edge_target_interval(double d_est, double gamma,
                                         double delta, int top_level);

enum class DoublingState { kAscending, kSearching, kDescending };
const char* state_name(DoublingState s);

/// What travels with the message.
struct DoublingHeader {
  Point destination = -1;
  IntervalLabel destination_label;        // leaf of the destination, net tree
  IntervalLabel destination_light_label;  // same leaf, its light subtree
  int target_level = 0;
  NodeId position = kNoNode;
};

struct DoublingMove {
  NodeId node = kNoNode;
  Point point = -1;
  DoublingState state = DoublingState::kAscending;
  /// Distance between the representatives of this node and the previous one.
  double edge_weight = 0.0;
  double cumulative_weight = 0.0;
};

struct DoublingTrace {
  std::vector<DoublingMove> moves;  // every net-tree position, source leaf first
  std::vector<Point> hops;          // points visited; repeated points dropped
  double total_weight = 0.0;
  int target_level = 0;

  std::size_t hop_count() const noexcept {
    return hops.empty() ? 0 : hops.size() - 1;
  }
};

class DoublingRoutingError : public std::runtime_error {
 public:
  DoublingRoutingError(const std::string& what, DoublingTrace partial)
      : std::runtime_error(what), trace_(std::move(partial)) {}
  const DoublingTrace& trace() const noexcept { return trace_; }

 private:
  DoublingTrace trace_;
};

/// Ascending / searching / descending routing on the shortcut net tree, using
/// the tree router inside light subtrees.
DoublingTrace route_doubling(const NetTree& tree,
                             const DistanceLabeling& labeling, Point source,
                             Point dest);

struct DoublingLabelBits {
  std::size_t routing_bits = 0;
  std::size_t distance_bits = 0;
};

/// Per point: labels of every represented node (own interval, level,
/// neighbour intervals, light-subtree routing label) and, separately, the
/// distance label.
std::vector<DoublingLabelBits> doubling_label_bits(
    const NetTree& tree, const DistanceLabeling& labeling);

/// `level node rep parent` lines, then `cross u v` (u < v), then
/// `light-root node`.
void write_net_tree(std::ostream& out, const NetTree& tree);

}  // namespace spanroute
