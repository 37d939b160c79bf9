#include "spanroute/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace spanroute {

NetLevels build_net_hierarchy(const PointMetric& metric) {
  NetLevels out;
  std::vector<Point> all(metric.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Point>(i);
  out.levels.push_back(std::move(all));
  for (int level = 1; out.levels.back().size() > 1; ++level) {
    const double radius = std::ldexp(1.0, level);
    std::vector<Point> kept;
    for (Point p : out.levels.back()) {
      const bool covered = std::any_of(kept.begin(), kept.end(), [&](Point q) {
        return within_radius(metric.distance(p, q), radius);
      });
      if (!covered) kept.push_back(p);
    }
    out.levels.push_back(std::move(kept));
  }
  return out;
}

NetTree NetTree::build(const PointMetric& metric, const NetLevels& levels,
                       NetTreeParams params) {
  if (!(params.gamma > 4.0)) {
    throw std::invalid_argument("gamma must exceed 4");
  }
  if (params.k < 4) throw std::invalid_argument("k must be at least 4");
  if (levels.levels.empty() || levels.levels.front().size() != metric.size()) {
    throw std::invalid_argument("levels do not match the metric");
  }

  NetTree t;
  t.metric_ = &metric;
  t.params_ = params;
  t.top_ = static_cast<int>(levels.top());

  // Nodes grouped by level, each level in ascending point id.
  std::vector<std::vector<NodeId>> node_at(levels.levels.size(),
                                           std::vector<NodeId>(metric.size(), kNoNode));
  for (std::size_t i = 0; i < levels.levels.size(); ++i) {
    t.level_offset_.push_back(t.nodes_.size());
    for (Point p : levels.levels[i]) {
      node_at[i][p] = static_cast<NodeId>(t.nodes_.size());
      NetNode node;
      node.level = static_cast<int>(i);
      node.rep = p;
      t.nodes_.push_back(node);
    }
  }
  t.level_offset_.push_back(t.nodes_.size());
  t.node_ids_.resize(t.nodes_.size());
  for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
    t.node_ids_[i] = static_cast<NodeId>(i);
  }
  t.root_ = static_cast<NodeId>(t.nodes_.size() - 1);
  if (levels.levels.back().size() != 1) {
    throw NetTreeError("top level is not a single point");
  }

  // Parents: the same point when it survives to the next level, otherwise
  // the first covering point in id order.
  for (std::size_t i = 0; i + 1 < levels.levels.size(); ++i) {
    const double radius = std::ldexp(1.0, static_cast<int>(i) + 1);
    for (Point p : levels.levels[i]) {
      const NodeId child = node_at[i][p];
      NodeId parent = node_at[i + 1][p];
      if (parent == kNoNode) {
        for (Point q : levels.levels[i + 1]) {
          if (within_radius(metric.distance(p, q), radius)) {
            parent = node_at[i + 1][q];
            break;
          }
        }
      }
      if (parent == kNoNode) {
        throw NetTreeError("no covering parent for point " + std::to_string(p) +
                           " at level " + std::to_string(i));
      }
      t.nodes_[child].parent = parent;
      t.nodes_[parent].children.push_back(child);
    }
  }

  for (std::size_t i = 0; i < levels.levels.size(); ++i) {
    const double radius = params.gamma * std::ldexp(1.0, static_cast<int>(i));
    const auto& pts = levels.levels[i];
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (within_radius(metric.distance(pts[a], pts[b]), radius)) {
          const NodeId u = node_at[i][pts[a]];
          const NodeId v = node_at[i][pts[b]];
          t.nodes_[u].cross.push_back(v);
          t.nodes_[v].cross.push_back(u);
        }
      }
    }
  }
  for (auto& node : t.nodes_) std::sort(node.cross.begin(), node.cross.end());

  t.leaves_.assign(metric.size(), kNoNode);
  std::vector<std::vector<NodeId>> per_point(metric.size());
  for (std::size_t id = 0; id < t.nodes_.size(); ++id) {
    const auto& node = t.nodes_[id];
    if (node.level == 0) t.leaves_[node.rep] = static_cast<NodeId>(id);
    per_point[node.rep].push_back(static_cast<NodeId>(id));
  }
  for (const auto& list : per_point) {
    t.point_offset_.push_back(t.point_nodes_.size());
    t.point_nodes_.insert(t.point_nodes_.end(), list.begin(), list.end());
  }
  t.point_offset_.push_back(t.point_nodes_.size());

  std::vector<TreeEdge> edges;
  edges.reserve(t.nodes_.size());
  for (std::size_t id = 0; id < t.nodes_.size(); ++id) {
    const auto& node = t.nodes_[id];
    if (node.parent == kNoNode) continue;
    edges.push_back({node.parent, static_cast<NodeId>(id),
                     metric.distance(node.rep, t.nodes_[node.parent].rep)});
  }
  t.global_ = RootedTree::build(t.nodes_.size(), edges, t.root_,
                                TreeBuildOptions{.allow_zero_weights = true});

  // D <= n: the whole net tree is one light subtree.
  int cut = t.top_;
  const double ratio = metric.diameter() / static_cast<double>(metric.size());
  if (ratio > 1.0) cut = static_cast<int>(std::ceil(std::log2(ratio)));
  t.light_level_ = std::clamp(cut, 0, t.top_);

  for (NodeId r : t.level_nodes(t.light_level_)) {
    LightSubtree light;
    light.root = r;
    std::vector<NodeId> stack{r};
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      t.nodes_[v].light = static_cast<int>(t.light_.size());
      t.nodes_[v].light_vertex = static_cast<Vertex>(light.nodes.size());
      light.nodes.push_back(v);
      for (NodeId c : t.nodes_[v].children) stack.push_back(c);
    }
    std::vector<TreeEdge> local;
    for (std::size_t i = 1; i < light.nodes.size(); ++i) {
      const auto& node = t.nodes_[light.nodes[i]];
      local.push_back({t.nodes_[node.parent].light_vertex,
                       static_cast<Vertex>(i),
                       metric.distance(node.rep, t.nodes_[node.parent].rep)});
    }
    light.tree = RootedTree::build(light.nodes.size(), local, 0,
                                   TreeBuildOptions{.allow_zero_weights = true});
    light.spanner = build_spanner(light.tree, params.k);
    light.views = assign_labels(light.tree, light.spanner.graph);
    t.light_.push_back(std::move(light));
  }
  return t;
}

std::span<const NodeId> NetTree::level_nodes(int level) const {
  if (level < 0 || level > top_) throw std::out_of_range("level out of range");
  const auto first = level_offset_[static_cast<std::size_t>(level)];
  const auto last = level_offset_[static_cast<std::size_t>(level) + 1];
  return std::span<const NodeId>(node_ids_).subspan(first, last - first);
}

std::span<const NodeId> NetTree::nodes_of(Point p) const {
  const auto i = static_cast<std::size_t>(p);
  return std::span<const NodeId>(point_nodes_)
      .subspan(point_offset_.at(i), point_offset_.at(i + 1) - point_offset_[i]);
}

IntervalLabel NetTree::label(NodeId id) const { return label_of(global_, id); }

bool NetTree::is_ancestor(NodeId a, NodeId v) const {
  return global_.is_ancestor(a, v);
}

NodeId NetTree::ancestor_at(NodeId v, int level) const {
  while (v != kNoNode && node(v).level < level) v = node(v).parent;
  return v;
}

double NetTree::node_distance(NodeId a, NodeId b) const {
  return metric_->distance(node(a).rep, node(b).rep);
}

bool NetTree::has_cross_edge(NodeId a, NodeId b) const {
  const auto& c = node(a).cross;
  return std::binary_search(c.begin(), c.end(), b);
}

std::vector<NetTree::PointEdge> NetTree::point_edges() const {
  std::map<std::pair<Point, Point>, double> pairs;
  auto add = [&](Point a, Point b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    pairs.emplace(std::make_pair(a, b), metric_->distance(a, b));
  };
  for (const auto& node : nodes_) {
    if (node.parent != kNoNode) add(node.rep, nodes_[node.parent].rep);
    for (NodeId c : node.cross) add(node.rep, nodes_[c].rep);
  }
  for (const auto& light : light_) {
    for (const auto& e : light.spanner.graph.edges()) {
      add(nodes_[light.nodes[e.u]].rep, nodes_[light.nodes[e.v]].rep);
    }
  }
  std::vector<PointEdge> out;
  out.reserve(pairs.size());
  for (const auto& [key, w] : pairs) out.push_back({key.first, key.second, w});
  return out;
}

LevelInterval cross_edge_target_interval(double d_est, double gamma,
                                         double delta, int top_level) {
  if (!(d_est > 0.0) || !std::isfinite(d_est)) {
    throw std::invalid_argument("distance estimate must be positive");
  }
  if (!(gamma > 4.0)) throw std::invalid_argument("gamma must exceed 4");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  const double lo = std::floor(std::log2(d_est / ((gamma + 4.0) * (1.0 + delta))));
  const double hi = std::ceil(std::log2(d_est / (gamma - 4.0)));
  auto clamp = [top_level](double x) {
    return static_cast<int>(std::clamp(x, 0.0, static_cast<double>(top_level)));
  };
  return {clamp(lo), clamp(hi)};
}

std::vector<DoublingLabelBits> doubling_label_bits(
    const NetTree& tree, const DistanceLabeling& labeling) {
  const auto interval_bits =
      2 * static_cast<std::size_t>(label_integer_bits(tree.node_count()));
  const auto level_bits = static_cast<std::size_t>(
      label_integer_bits(static_cast<std::size_t>(tree.top_level())));
  std::vector<std::vector<std::size_t>> light_bits;
  for (const auto& light : tree.light_subtrees()) {
    light_bits.push_back(label_storage_bits(light.views));
  }

  const auto n = tree.metric().size();
  std::vector<DoublingLabelBits> out(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto point = static_cast<Point>(p);
    out[p].distance_bits = labeling.label_bits(labeling.label(point));
    // A single point is never routed anywhere.
    if (n == 1) continue;
    for (NodeId id : tree.nodes_of(point)) {
      const auto& node = tree.node(id);
      const std::size_t neighbours = node.children.size() + node.cross.size() +
                                     (node.parent == kNoNode ? 0 : 1);
      out[p].routing_bits += interval_bits * (1 + neighbours) + level_bits;
      if (node.light >= 0) {
        out[p].routing_bits +=
            light_bits[static_cast<std::size_t>(node.light)]
                      [static_cast<std::size_t>(node.light_vertex)];
      }
    }
  }
  return out;
}

const char* state_name(DoublingState s) {
  switch (s) {
    case DoublingState::kAscending:
      return "ascending";
    case DoublingState::kSearching:
      return "searching";
    case DoublingState::kDescending:
      return "descending";
  }
  return "?";
}

void write_net_tree(std::ostream& out, const NetTree& tree) {
  for (std::size_t id = 0; id < tree.node_count(); ++id) {
    const auto& node = tree.node(static_cast<NodeId>(id));
    out << node.level << ' ' << id << ' ' << node.rep << ' ' << node.parent
        << '\n';
  }
  for (std::size_t id = 0; id < tree.node_count(); ++id) {
    for (NodeId c : tree.node(static_cast<NodeId>(id)).cross) {
      if (static_cast<NodeId>(id) < c) out << "cross " << id << ' ' << c << '\n';
    }
  }
  for (const auto& light : tree.light_subtrees()) {
    out << "light-root " << light.root << '\n';
  }
}

}  // namespace spanroute
