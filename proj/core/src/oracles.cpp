#include "spanroute/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace spanroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  explicit UnionFind(std::size_t n) : up(n) {
    std::iota(up.begin(), up.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
  std::vector<std::size_t> up;
};

std::vector<Vertex> root_chain(const RootedTree& tree, Vertex v) {
  std::vector<Vertex> chain;
  for (; v != kNoVertex; v = tree.parent(v)) chain.push_back(v);
  return chain;
}

}  // namespace

std::vector<double> shortest_paths_from(const SpannerGraph& graph,
                                        Vertex source) {
  std::vector<double> dist(graph.vertex_count(), kInf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist.at(static_cast<std::size_t>(source)) = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& a : graph.neighbours(u)) {
      const double nd = d + a.weight;
      auto& slot = dist[static_cast<std::size_t>(a.vertex)];
      if (nd < slot) {
        slot = nd;
        queue.emplace(nd, a.vertex);
      }
    }
  }
  return dist;
}

double oracle_shortest_path(const SpannerGraph& graph, Vertex u, Vertex v) {
  const double d = shortest_paths_from(graph, u).at(static_cast<std::size_t>(v));
  if (d == kInf) throw std::runtime_error("vertex unreachable");
  return d;
}

std::vector<std::vector<double>> all_pairs_matrix(const SpannerGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
  for (const auto& e : graph.edges()) {
    const auto a = static_cast<std::size_t>(e.u);
    const auto b = static_cast<std::size_t>(e.v);
    m[a][b] = std::min(m[a][b], e.weight);
    m[b][a] = std::min(m[b][a], e.weight);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = std::min(m[i][j], m[i][k] + m[k][j]);
      }
    }
  }
  return m;
}

double oracle_mst_weight(const PointMetric& metric) {
  const std::size_t n = metric.size();
  std::vector<double> best(n, kInf);
  std::vector<char> done(n, 0);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || best[v] < best[u])) u = v;
    }
    done[u] = 1;
    total += best[u];
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      best[v] = std::min(best[v], metric.distance(static_cast<Point>(u),
                                                  static_cast<Point>(v)));
    }
  }
  return total;
}

double kruskal_mst_weight(const PointMetric& metric) {
  const std::size_t n = metric.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(
          metric.distance(static_cast<Point>(i), static_cast<Point>(j)), i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  UnionFind uf(n);
  double total = 0.0;
  for (const auto& [w, i, j] : pairs) {
    if (uf.unite(i, j)) total += w;
  }
  return total;
}

std::vector<Vertex> naive_tree_path(const RootedTree& tree, Vertex u, Vertex v) {
  auto up = root_chain(tree, u);
  auto down = root_chain(tree, v);
  // Strip the common suffix but keep the meeting vertex once.
  while (up.size() > 1 && down.size() > 1 &&
         up[up.size() - 2] == down[down.size() - 2]) {
    up.pop_back();
    down.pop_back();
  }
  down.pop_back();
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

double naive_tree_distance(const RootedTree& tree, Vertex u, Vertex v) {
  const auto path = naive_tree_path(tree, u, v);
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Vertex a = path[i - 1];
    const Vertex b = path[i];
    total += tree.parent(a) == b ? tree.parent_weight(a) : tree.parent_weight(b);
  }
  return total;
}

bool is_subsequence(std::span<const Vertex> sub, std::span<const Vertex> seq) {
  std::size_t i = 0;
  for (Vertex v : seq) {
    if (i < sub.size() && sub[i] == v) ++i;
  }
  return i == sub.size();
}

CutSetCheck check_cut_sets(const RootedTree& tree,
                           const CanonicalDecomposition& dec, std::size_t k) {
  CutSetCheck out;
  const auto subtrees = dec.subtrees();
  out.subtrees = subtrees.size();
  std::vector<int> owners(tree.size(), 0);
  for (const auto& s : subtrees) {
    for (Vertex c : s.cut) ++owners[static_cast<std::size_t>(c)];
    out.largest_cut = std::max(out.largest_cut, s.cut.size());
    const std::size_t n = s.size();
    const bool base = 2 * k + 2 >= n;
    if (!base && s.cut.size() > k + 1) ++out.oversized_cuts;
    for (std::size_t c : s.children) {
      if (k * subtrees[c].size() > 2 * n) ++out.oversized_children;
    }
    // A component is a connected subtree: exactly one member (its root) has
    // its parent outside.
    std::vector<char> member(tree.size(), 0);
    for (Vertex v : s.vertices) member[static_cast<std::size_t>(v)] = 1;
    std::size_t tops = 0;
    for (Vertex v : s.vertices) {
      const Vertex p = tree.parent(v);
      if (p == kNoVertex || !member[static_cast<std::size_t>(p)]) ++tops;
    }
    if (tops != 1 || !member[static_cast<std::size_t>(s.root)] ||
        (tree.parent(s.root) != kNoVertex &&
         member[static_cast<std::size_t>(tree.parent(s.root))])) {
      ++out.partition_errors;
    }
  }
  for (int c : owners) {
    if (c != 1) ++out.partition_errors;
  }
  return out;
}

NetCheck check_net_levels(const PointMetric& metric, const NetLevels& levels) {
  NetCheck out;
  if (levels.levels.empty() || levels.levels.back().size() != 1 ||
      levels.levels.front().size() != metric.size()) {
    ++out.structure;
    return out;
  }
  for (std::size_t i = 1; i < levels.levels.size(); ++i) {
    const double r = std::ldexp(1.0, static_cast<int>(i));
    const auto& prev = levels.levels[i - 1];
    const auto& cur = levels.levels[i];
    for (std::size_t a = 0; a < cur.size(); ++a) {
      if (std::find(prev.begin(), prev.end(), cur[a]) == prev.end()) ++out.nesting;
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        if (metric.distance(cur[a], cur[b]) <= r) ++out.packing;
      }
    }
    for (Point y : prev) {
      double nearest = kInf;
      for (Point x : cur) nearest = std::min(nearest, metric.distance(x, y));
      if (!within_radius(nearest, r)) ++out.covering;
    }
  }
  return out;
}

NetCheck check_net_tree(const NetTree& tree) {
  NetCheck out;
  const auto& metric = tree.metric();
  const int top = tree.top_level();
  if (tree.level_nodes(top).size() != 1) ++out.structure;

  std::vector<int> leaf_count(metric.size(), 0);
  for (NodeId id : tree.level_nodes(0)) ++leaf_count[tree.node(id).rep];
  for (int c : leaf_count) {
    if (c != 1) ++out.structure;
  }

  for (std::size_t id = 0; id < tree.node_count(); ++id) {
    const auto& node = tree.node(static_cast<NodeId>(id));
    if (node.parent == kNoNode) continue;
    const auto& parent = tree.node(node.parent);
    if (parent.level != node.level + 1 ||
        !within_radius(metric.distance(node.rep, parent.rep),
                       std::ldexp(1.0, node.level + 1))) {
      ++out.parent;
    }
  }

  for (int level = 0; level <= top; ++level) {
    const auto ids = tree.level_nodes(level);
    const double r = tree.gamma() * std::ldexp(1.0, level);
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        const bool want = within_radius(
            metric.distance(tree.node(ids[a]).rep, tree.node(ids[b]).rep), r);
        if (want != tree.has_cross_edge(ids[a], ids[b])) ++out.cross;
      }
    }
  }

  // Monotonicity and climb distance, per leaf pair and per leaf.
  const auto leaves = tree.level_nodes(0);
  for (NodeId leaf : leaves) {
    const Point p = tree.node(leaf).rep;
    for (NodeId v = leaf; v != kNoNode; v = tree.node(v).parent) {
      const auto& node = tree.node(v);
      if (!within_radius(metric.distance(node.rep, p),
                         2.0 * std::ldexp(1.0, node.level))) {
        ++out.climb;
      }
    }
  }
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    for (std::size_t b = a + 1; b < leaves.size(); ++b) {
      NodeId u = leaves[a];
      NodeId v = leaves[b];
      bool seen = false;
      while (u != v) {
        const bool edge = tree.has_cross_edge(u, v);
        if (seen && !edge) {
          ++out.monotone;
          break;
        }
        seen = seen || edge;
        u = tree.node(u).parent;
        v = tree.node(v).parent;
      }
    }
  }
  return out;
}

int first_cross_edge_level(const NetTree& tree, Point p, Point q) {
  NodeId u = tree.leaf(p);
  NodeId v = tree.leaf(q);
  while (u != v) {
    if (tree.has_cross_edge(u, v)) return tree.node(u).level;
    u = tree.node(u).parent;
    v = tree.node(v).parent;
  }
  return -1;
}

int first_joined_level(const NetTree& tree, Point p, Point q) {
  NodeId u = tree.leaf(p);
  NodeId v = tree.leaf(q);
  while (u != v && !tree.has_cross_edge(u, v)) {
    u = tree.node(u).parent;
    v = tree.node(v).parent;
  }
  return tree.node(u).level;
}

double reference_path_weight(const NetTree& tree, Point p, Point q) {
  const auto& metric = tree.metric();
  const int level = first_joined_level(tree, p, q);
  auto climb = [&](Point x) {
    double w = 0.0;
    NodeId v = tree.leaf(x);
    while (tree.node(v).level < level) {
      const NodeId up = tree.node(v).parent;
      w += metric.distance(tree.node(v).rep, tree.node(up).rep);
      v = up;
    }
    return std::make_pair(w, v);
  };
  const auto [wp, top_p] = climb(p);
  const auto [wq, top_q] = climb(q);
  const double across =
      top_p == top_q ? 0.0
                     : metric.distance(tree.node(top_p).rep, tree.node(top_q).rep);
  return wp + across + wq;
}

}  // namespace spanroute
