#include <algorithm>
#include <cmath>

#include "spanroute/doubling.hpp"
#include "spanroute/router.hpp"

namespace spanroute {
namespace {

// Climb inside a light subtree towards the ancestor at `target_level`: the
// highest shortcut neighbour that is an ancestor of the current node without
// passing that level. Same choice as the tree router's case 2 with the level
// ancestor as destination.
NodeId climb_in_light(const NetTree& tree, NodeId u, int target_level) {
  const auto& node = tree.node(u);
  const auto& light = tree.light_subtrees()[static_cast<std::size_t>(node.light)];
  const auto& view = light.views[static_cast<std::size_t>(node.light_vertex)];
  const NeighbourEntry* best = nullptr;
  for (const auto& nb : view.neighbours) {
    if (!nb.label.contains(view.label)) continue;
    const NodeId candidate = light.nodes[static_cast<std::size_t>(nb.vertex)];
    if (tree.node(candidate).level > target_level) continue;
    if (!best || nb.label.rank > best->label.rank) best = &nb;
  }
  if (!best) return node.parent;
  return light.nodes[static_cast<std::size_t>(best->vertex)];
}

NodeId descend_in_light(const NetTree& tree, NodeId u,
                        const IntervalLabel& dest_light) {
  const auto& node = tree.node(u);
  const auto& light = tree.light_subtrees()[static_cast<std::size_t>(node.light)];
  const auto& view = light.views[static_cast<std::size_t>(node.light_vertex)];
  const Decision d = decide(view, dest_light);
  return light.nodes[static_cast<std::size_t>(d.next)];
}

NodeId child_towards(const NetTree& tree, NodeId u, const IntervalLabel& dest) {
  for (NodeId c : tree.node(u).children) {
    if (tree.label(c).contains(dest)) return c;
  }
  return kNoNode;
}

NodeId cross_towards(const NetTree& tree, NodeId u, const IntervalLabel& dest) {
  NodeId best = kNoNode;
  for (NodeId c : tree.node(u).cross) {
    const auto l = tree.label(c);
    if (!l.contains(dest)) continue;
    if (best == kNoNode || l.rank < tree.label(best).rank) best = c;
  }
  return best;
}

std::size_t move_budget(const NetTree& tree) {
  std::size_t deepest = 0;
  for (const auto& light : tree.light_subtrees()) {
    deepest = std::max(deepest, light.spanner.decomposition.max_sequence_length());
  }
  return 4 * static_cast<std::size_t>(tree.top_level() + 2) +
         2 * hop_budget(deepest);
}

}  // namespace

DoublingTrace route_doubling(const NetTree& tree,
                             const DistanceLabeling& labeling, Point source,
                             Point dest) {
  const auto n = tree.metric().size();
  if (source < 0 || dest < 0 || static_cast<std::size_t>(source) >= n ||
      static_cast<std::size_t>(dest) >= n) {
    throw std::invalid_argument("unknown point");
  }
  if (source == dest) throw std::invalid_argument("source equals destination");

  const NodeId dest_leaf = tree.leaf(dest);
  const auto& dest_node = tree.node(dest_leaf);
  DoublingHeader header;
  header.destination = dest;
  header.destination_label = tree.label(dest_leaf);
  header.destination_light_label = label_of(
      tree.light_subtrees()[static_cast<std::size_t>(dest_node.light)].tree,
      dest_node.light_vertex);
  const double estimate =
      labeling.estimate(labeling.label(source), labeling.label(dest));
  header.target_level = cross_edge_target_interval(estimate, tree.gamma(),
                                                   labeling.delta(),
                                                   tree.top_level())
                            .lo;
  header.position = tree.leaf(source);

  DoublingTrace trace;
  trace.target_level = header.target_level;
  trace.moves.push_back(
      {header.position, source, DoublingState::kAscending, 0.0, 0.0});
  trace.hops.push_back(source);

  const std::size_t budget = move_budget(tree);
  while (header.position != dest_leaf) {
    if (trace.moves.size() > budget) {
      throw DoublingRoutingError("move budget exhausted", trace);
    }
    const NodeId u = header.position;
    const auto& node = tree.node(u);
    NodeId next = kNoNode;
    DoublingState state;
    if (tree.label(u).contains(header.destination_label)) {
      state = DoublingState::kDescending;
      next = node.light >= 0 ? descend_in_light(tree, u, header.destination_light_label)
                             : child_towards(tree, u, header.destination_label);
    } else if (node.level < header.target_level) {
      state = DoublingState::kAscending;
      const int target = std::min(header.target_level, tree.light_level());
      next = (node.light >= 0 && node.level < target)
                 ? climb_in_light(tree, u, target)
                 : node.parent;
    } else {
      state = DoublingState::kSearching;
      next = cross_towards(tree, u, header.destination_label);
      if (next == kNoNode) next = node.parent;
    }
    if (next == kNoNode) {
      throw DoublingRoutingError("no next node at " + std::to_string(u), trace);
    }
    const Point from = node.rep;
    const Point to = tree.node(next).rep;
    const double w = from == to ? 0.0 : tree.metric().distance(from, to);
    trace.total_weight += w;
    trace.moves.push_back({next, to, state, w, trace.total_weight});
    if (to != trace.hops.back()) trace.hops.push_back(to);
    header.position = next;
  }
  return trace;
}

}  // namespace spanroute
