#include "spanroute/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace spanroute {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::string describe(const TreeEdge& e) {
  std::ostringstream os;
  os << "(" << e.u << ", " << e.v << ", " << e.weight << ")";
  return os.str();
}

}  // namespace

RootedTree RootedTree::build(std::span<const TreeEdge> edges, Vertex root,
                             TreeBuildOptions options) {
  Vertex max_id = root;
  for (const auto& e : edges) max_id = std::max({max_id, e.u, e.v});
  if (max_id < 0) {
    throw TreeError(TreeErrorKind::kUnknownVertex, "negative vertex id");
  }
  return build(static_cast<std::size_t>(max_id) + 1, edges, root, options);
}

RootedTree RootedTree::build(std::size_t vertex_count,
                             std::span<const TreeEdge> edges, Vertex root,
                             TreeBuildOptions options) {
  const auto n = vertex_count;
  auto in_range = [n](Vertex v) {
    return v >= 0 && static_cast<std::size_t>(v) < n;
  };
  if (n == 0 || !in_range(root)) {
    throw TreeError(TreeErrorKind::kUnknownVertex,
                    "root " + std::to_string(root) + " is not a vertex");
  }

  DisjointSets sets(n);
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::vector<std::pair<Vertex, double>>> adjacency(n);
  for (const auto& e : edges) {
    if (!in_range(e.u) || !in_range(e.v)) {
      throw TreeError(TreeErrorKind::kUnknownVertex,
                      "edge " + describe(e) + " names an unknown vertex");
    }
    const bool weight_ok = std::isfinite(e.weight) &&
                           (e.weight > 0.0 ||
                            (options.allow_zero_weights && e.weight == 0.0));
    if (!weight_ok) {
      throw TreeError(TreeErrorKind::kNonpositiveWeight,
                      "edge " + describe(e) + " has a nonpositive weight");
    }
    if (e.u == e.v) {
      throw TreeError(TreeErrorKind::kCycle,
                      "edge " + describe(e) + " is a self-loop");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw TreeError(TreeErrorKind::kDuplicateEdge,
                      "edge " + describe(e) + " appears more than once");
    }
    if (!sets.unite(static_cast<std::size_t>(e.u),
                    static_cast<std::size_t>(e.v))) {
      throw TreeError(TreeErrorKind::kCycle,
                      "edge " + describe(e) + " closes a cycle");
    }
    adjacency[e.u].emplace_back(e.v, e.weight);
    adjacency[e.v].emplace_back(e.u, e.weight);
  }
  if (edges.size() + 1 != n) {
    const auto root_set = sets.find(static_cast<std::size_t>(root));
    Vertex stray = kNoVertex;
    for (std::size_t v = 0; v < n; ++v) {
      if (sets.find(v) != root_set) {
        stray = static_cast<Vertex>(v);
        break;
      }
    }
    throw TreeError(TreeErrorKind::kDisconnected,
                    "vertex " + std::to_string(stray) +
                        " is not connected to root " + std::to_string(root));
  }

  RootedTree t;
  t.root_ = root;
  t.parent_.assign(n, kNoVertex);
  t.parent_weight_.assign(n, 0.0);
  t.depth_.assign(n, 0);

  // Breadth-first orientation away from the root.
  std::vector<Vertex> order;
  order.reserve(n);
  order.push_back(root);
  std::vector<char> visited(n, 0);
  visited[root] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (const auto& [w, weight] : adjacency[v]) {
      if (visited[w]) continue;
      visited[w] = 1;
      t.parent_[w] = v;
      t.parent_weight_[w] = weight;
      t.depth_[w] = t.depth_[v] + 1;
      order.push_back(w);
    }
  }

  t.subtree_size_.assign(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (t.parent_[*it] != kNoVertex) {
      t.subtree_size_[t.parent_[*it]] += t.subtree_size_[*it];
    }
  }

  // Children in CSR form, largest subtree first, then by id.
  t.child_offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (t.parent_[v] != kNoVertex) ++t.child_offset_[t.parent_[v] + 1];
  }
  std::partial_sum(t.child_offset_.begin(), t.child_offset_.end(),
                   t.child_offset_.begin());
  t.child_list_.assign(n > 0 ? n - 1 : 0, kNoVertex);
  {
    auto fill = t.child_offset_;
    for (std::size_t v = 0; v < n; ++v) {
      if (t.parent_[v] != kNoVertex) {
        t.child_list_[fill[t.parent_[v]]++] = static_cast<Vertex>(v);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = t.child_list_.begin() +
                 static_cast<std::ptrdiff_t>(t.child_offset_[v]);
    auto last = t.child_list_.begin() +
                static_cast<std::ptrdiff_t>(t.child_offset_[v + 1]);
    std::sort(first, last, [&t](Vertex a, Vertex b) {
      if (t.subtree_size_[a] != t.subtree_size_[b]) {
        return t.subtree_size_[a] > t.subtree_size_[b];
      }
      return a < b;
    });
  }

  // Post-order ranks.
  t.rank_.assign(n, 0);
  t.low_.assign(n, 0);
  t.by_rank_.assign(n + 1, kNoVertex);
  int next_rank = 1;
  std::vector<std::pair<Vertex, std::size_t>> stack;
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    auto& [v, next_child] = stack.back();
    const auto kids = t.children(v);
    if (next_child < kids.size()) {
      const Vertex c = kids[next_child++];
      stack.emplace_back(c, 0);
      continue;
    }
    t.rank_[v] = next_rank;
    t.by_rank_[next_rank] = v;
    ++next_rank;
    t.low_[v] = t.rank_[v] - static_cast<int>(t.subtree_size_[v]) + 1;
    stack.pop_back();
  }

  std::size_t levels = 1;
  while ((std::size_t{1} << levels) < n) ++levels;
  t.ancestors_.assign(levels, std::vector<Vertex>(n, root));
  for (std::size_t v = 0; v < n; ++v) {
    t.ancestors_[0][v] = t.parent_[v] == kNoVertex ? root : t.parent_[v];
  }
  for (std::size_t j = 1; j < levels; ++j) {
    for (std::size_t v = 0; v < n; ++v) {
      t.ancestors_[j][v] = t.ancestors_[j - 1][t.ancestors_[j - 1][v]];
    }
  }
  return t;
}

std::size_t RootedTree::checked(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= parent_.size()) {
    throw TreeError(TreeErrorKind::kUnknownVertex,
                    "unknown vertex " + std::to_string(v));
  }
  return static_cast<std::size_t>(v);
}

std::span<const Vertex> RootedTree::children(Vertex v) const {
  const auto i = checked(v);
  return std::span<const Vertex>(child_list_)
      .subspan(child_offset_[i], child_offset_[i + 1] - child_offset_[i]);
}

Vertex RootedTree::vertex_at_rank(int rank) const {
  if (rank < 1 || static_cast<std::size_t>(rank) > size()) {
    throw TreeError(TreeErrorKind::kUnknownVertex,
                    "rank " + std::to_string(rank) + " out of range");
  }
  return by_rank_[static_cast<std::size_t>(rank)];
}

std::size_t RootedTree::degree(Vertex v) const {
  return children(v).size() + (parent(v) == kNoVertex ? 0 : 1);
}

std::size_t RootedTree::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < size(); ++v) {
    best = std::max(best, degree(static_cast<Vertex>(v)));
  }
  return best;
}

bool RootedTree::is_ancestor(Vertex a, Vertex v) const {
  const int r = rank(v);
  return low(a) <= r && r <= rank(a);
}

Vertex RootedTree::lca(Vertex u, Vertex v) const {
  checked(u);
  checked(v);
  if (is_ancestor(u, v)) return u;
  if (is_ancestor(v, u)) return v;
  for (std::size_t j = ancestors_.size(); j-- > 0;) {
    const Vertex up = ancestors_[j][u];
    if (!is_ancestor(up, v)) u = up;
  }
  return parent_[u];
}

double RootedTree::distance(Vertex u, Vertex v) const {
  const Vertex top = lca(u, v);
  double total = 0.0;
  for (Vertex x = u; x != top; x = parent_[x]) total += parent_weight_[x];
  for (Vertex x = v; x != top; x = parent_[x]) total += parent_weight_[x];
  return total;
}

Vertex RootedTree::leftmost_descendant(Vertex v) const {
  checked(v);
  while (child_offset_[v + 1] > child_offset_[v]) {
    v = child_list_[child_offset_[v]];
  }
  return v;
}

std::vector<Vertex> RootedTree::path(Vertex u, Vertex v) const {
  const Vertex top = lca(u, v);
  std::vector<Vertex> up;
  for (Vertex x = u; x != top; x = parent_[x]) up.push_back(x);
  up.push_back(top);
  std::vector<Vertex> down;
  for (Vertex x = v; x != top; x = parent_[x]) down.push_back(x);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

double RootedTree::total_weight() const {
  double total = 0.0;
  for (double w : parent_weight_) total += w;
  return total;
}

std::vector<TreeEdge> RootedTree::edges() const {
  std::vector<TreeEdge> out;
  if (size() == 0) return out;
  out.reserve(size() - 1);
  std::vector<Vertex> stack{root_};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (v != root_) out.push_back({parent_[v], v, parent_weight_[v]});
    const auto kids = children(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

}  // namespace spanroute
