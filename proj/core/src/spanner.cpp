#include "spanroute/spanner.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <sstream>

#include "spanroute/tree_io.hpp"

namespace spanroute {

SpannerGraph::SpannerGraph(const RootedTree& tree) : adjacency_(tree.size()) {
  for (const auto& e : tree.edges()) {
    edges_.push_back({e.u, e.v, e.weight, EdgeKind::kTree});
    adjacency_[e.u].push_back({e.v, e.weight, EdgeKind::kTree});
    adjacency_[e.v].push_back({e.u, e.weight, EdgeKind::kTree});
  }
}

std::span<const Adjacent> SpannerGraph::neighbours(Vertex v) const {
  return adjacency_.at(static_cast<std::size_t>(v));
}

std::size_t SpannerGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

bool SpannerGraph::has_edge(Vertex u, Vertex v) const {
  const auto& list = adjacency_.at(static_cast<std::size_t>(u));
  return std::any_of(list.begin(), list.end(),
                     [v](const Adjacent& a) { return a.vertex == v; });
}

double SpannerGraph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

bool SpannerGraph::add_shortcut(Vertex u, Vertex v, double weight) {
  if (u == v || has_edge(u, v)) return false;
  edges_.push_back({u, v, weight, EdgeKind::kShortcut});
  adjacency_[u].push_back({v, weight, EdgeKind::kShortcut});
  adjacency_[v].push_back({u, weight, EdgeKind::kShortcut});
  return true;
}

std::size_t CanonicalDecomposition::owner(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= owner_.size()) {
    throw TreeError(TreeErrorKind::kUnknownVertex,
                    "unknown vertex " + std::to_string(v));
  }
  return owner_[static_cast<std::size_t>(v)];
}

const std::vector<int>& CanonicalDecomposition::sequence(Vertex v) const {
  return subtrees_[owner(v)].sequence;
}

std::size_t CanonicalDecomposition::max_sequence_length() const {
  std::size_t best = 0;
  for (const auto& s : subtrees_) {
    if (!s.cut.empty()) best = std::max(best, s.sequence.size());
  }
  return best;
}

const std::vector<int>& canonical_sequence(const CanonicalDecomposition& dec,
                                           Vertex v) {
  return dec.sequence(v);
}

namespace {

// Subtree-relative view used by both the public helpers and the builder.
// member(v) tells whether v belongs to the subtree; local_size is filled for
// members only.
template <typename Member>
Vertex leftmost_child_in(const RootedTree& tree, Vertex v, Member member) {
  const auto kids = tree.children(v);
  if (kids.empty() || !member(kids.front())) return kNoVertex;
  return kids.front();
}

template <typename Member>
std::optional<Vertex> balanced_on_path(const RootedTree& tree, Vertex v,
                                       std::size_t reference_size,
                                       std::size_t balance,
                                       const std::vector<std::size_t>& local_size,
                                       Member member) {
  if (balance > reference_size) return std::nullopt;
  const std::size_t threshold = reference_size - balance;
  for (Vertex w = v; w != kNoVertex;) {
    const Vertex c1 = leftmost_child_in(tree, w, member);
    const std::size_t c1_size =
        c1 == kNoVertex ? 0 : local_size[static_cast<std::size_t>(c1)];
    if (c1_size <= threshold) return w;
    w = c1;
  }
  return std::nullopt;
}

template <typename Member>
std::vector<Vertex> balanced_set(const RootedTree& tree, Vertex root,
                                 std::size_t balance,
                                 const std::vector<std::size_t>& local_size,
                                 Member member) {
  std::vector<Vertex> out;
  std::vector<Vertex> pending{root};
  while (!pending.empty()) {
    const Vertex x = pending.back();
    pending.pop_back();
    const auto b = balanced_on_path(tree, x, local_size[x], balance,
                                    local_size, member);
    if (!b) continue;
    out.push_back(*b);
    for (Vertex c : tree.children(*b)) {
      if (member(c)) pending.push_back(c);
    }
  }
  return out;
}

template <typename Member>
Vertex leftmost_in(const RootedTree& tree, Vertex v, Member member) {
  for (Vertex c = leftmost_child_in(tree, v, member); c != kNoVertex;
       c = leftmost_child_in(tree, v, member)) {
    v = c;
  }
  return v;
}

// Base-case test 2k >= n' - 2, i.e. k >= n'/2 - 1, in integers.
bool is_small(std::size_t n, std::size_t k) { return 2 * k + 2 >= n; }

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

struct MaskedSubtree {
  std::vector<Vertex> members;  // ascending rank
  std::vector<std::size_t> local_size;
  Vertex root = kNoVertex;
};

MaskedSubtree describe_mask(const RootedTree& tree,
                            std::span<const char> in_subtree) {
  if (in_subtree.size() != tree.size()) {
    throw SpannerError("subtree mask size does not match the tree");
  }
  MaskedSubtree m;
  m.local_size.assign(tree.size(), 0);
  for (int r = 1; r <= static_cast<int>(tree.size()); ++r) {
    const Vertex v = tree.vertex_at_rank(r);
    if (in_subtree[v]) m.members.push_back(v);
  }
  for (Vertex v : m.members) {
    m.local_size[v] += 1;
    const Vertex p = tree.parent(v);
    if (p != kNoVertex && in_subtree[p]) {
      m.local_size[p] += m.local_size[v];
    } else {
      if (m.root != kNoVertex) {
        throw SpannerError("subtree mask is not connected");
      }
      m.root = v;
    }
  }
  if (m.members.empty()) throw SpannerError("empty subtree");
  return m;
}

}  // namespace

std::optional<Vertex> first_balanced_on_leftmost_path(
    const RootedTree& tree, std::span<const char> in_subtree, Vertex v,
    std::size_t balance) {
  const auto m = describe_mask(tree, in_subtree);
  if (v < 0 || static_cast<std::size_t>(v) >= tree.size() || !in_subtree[v]) {
    throw SpannerError("vertex " + std::to_string(v) + " is outside the subtree");
  }
  auto member = [&](Vertex x) { return in_subtree[x] != 0; };
  return balanced_on_path(tree, v, m.members.size(), balance, m.local_size,
                          member);
}

std::vector<Vertex> cut_vertices(const RootedTree& tree,
                                 std::span<const char> in_subtree,
                                 std::size_t k) {
  const auto m = describe_mask(tree, in_subtree);
  const std::size_t n = m.members.size();
  if (is_small(n, k)) return m.members;
  auto member = [&](Vertex x) { return in_subtree[x] != 0; };
  auto cut = balanced_set(tree, m.root, ceil_div(n, k), m.local_size, member);
  cut.push_back(m.root);
  cut.push_back(leftmost_in(tree, m.root, member));
  std::sort(cut.begin(), cut.end(), [&tree](Vertex a, Vertex b) {
    return tree.rank(a) < tree.rank(b);
  });
  cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
  return cut;
}

struct SpannerBuilder {
  static constexpr std::size_t kCut = static_cast<std::size_t>(-1);

  const RootedTree& tree;
  std::size_t k;
  // Index of the canonical subtree currently holding v; kCut once v is cut.
  std::vector<std::size_t> holder;
  std::vector<std::size_t> local_size;
  CanonicalDecomposition dec;

  SpannerBuilder(const RootedTree& t, std::size_t k_)
      : tree(t), k(k_), holder(t.size(), 0), local_size(t.size(), 0) {
    dec.owner_.assign(t.size(), 0);
  }

  void run() {
    CanonicalSubtree top;
    for (int r = 1; r <= static_cast<int>(tree.size()); ++r) {
      top.vertices.push_back(tree.vertex_at_rank(r));
    }
    dec.subtrees_.push_back(std::move(top));
    for (std::size_t s = 0; s < dec.subtrees_.size(); ++s) process(s);
  }

  void process(std::size_t s) {
    // dec.subtrees_ grows inside this function; never hold a reference
    // across push_back.
    const auto members = dec.subtrees_[s].vertices;
    const std::size_t n = members.size();
    auto member = [&](Vertex x) { return holder[x] == s; };

    for (Vertex v : members) local_size[v] = 0;
    Vertex root = kNoVertex;
    for (Vertex v : members) {
      local_size[v] += 1;
      const Vertex p = tree.parent(v);
      if (p != kNoVertex && member(p)) {
        local_size[p] += local_size[v];
      } else {
        root = v;
      }
    }
    const Vertex leftmost = leftmost_in(tree, root, member);

    std::vector<Vertex> cut;
    std::size_t balance = 0;
    if (is_small(n, k)) {
      cut = members;
    } else {
      balance = ceil_div(n, k);
      cut = balanced_set(tree, root, balance, local_size, member);
      cut.push_back(root);
      cut.push_back(leftmost);
      std::sort(cut.begin(), cut.end(), [this](Vertex a, Vertex b) {
        return tree.rank(a) < tree.rank(b);
      });
      cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
    }

    for (Vertex c : cut) {
      holder[c] = kCut;
      dec.owner_[c] = s;
    }

    // Remaining components, rooted where the tree parent was cut.
    std::vector<Vertex> roots;
    for (Vertex v : members) {
      if (holder[v] != s) continue;
      const Vertex p = tree.parent(v);
      if (p == kNoVertex || holder[p] != s) roots.push_back(v);
    }
    std::sort(roots.begin(), roots.end(), [this](Vertex a, Vertex b) {
      return tree.rank(a) < tree.rank(b);
    });

    std::vector<std::size_t> child_ids;
    int position = 0;
    for (Vertex r : roots) {
      CanonicalSubtree child;
      child.sequence = dec.subtrees_[s].sequence;
      child.sequence.push_back(++position);
      child.parent = s;
      std::vector<Vertex> stack{r};
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        child.vertices.push_back(v);
        for (Vertex c : tree.children(v)) {
          if (holder[c] == s) stack.push_back(c);
        }
      }
      std::sort(child.vertices.begin(), child.vertices.end(),
                [this](Vertex a, Vertex b) {
                  return tree.rank(a) < tree.rank(b);
                });
      const std::size_t id = dec.subtrees_.size();
      for (Vertex v : child.vertices) holder[v] = id;
      child_ids.push_back(id);
      dec.subtrees_.push_back(std::move(child));
    }

    auto& self = dec.subtrees_[s];
    self.root = root;
    self.leftmost = leftmost;
    self.cut = std::move(cut);
    self.balance = balance;
    self.children = std::move(child_ids);
  }
};

SpannerResult build_spanner(const RootedTree& tree, std::size_t k) {
  if (k < 4) {
    throw SpannerError("k must be at least 4, got " + std::to_string(k));
  }
  if (tree.size() == 0) throw SpannerError("empty tree");
  SpannerBuilder builder(tree, k);
  builder.run();

  SpannerResult result{SpannerGraph(tree), std::move(builder.dec)};
  for (const auto& sub : result.decomposition.subtrees()) {
    for (std::size_t i = 0; i < sub.cut.size(); ++i) {
      for (std::size_t j = i + 1; j < sub.cut.size(); ++j) {
        const Vertex a = sub.cut[i];
        const Vertex b = sub.cut[j];
        if (tree.parent(a) == b || tree.parent(b) == a) continue;
        result.graph.add_shortcut(a, b, tree.distance(a, b));
      }
    }
  }
  return result;
}

std::string format_sequence(const std::vector<int>& sequence) {
  if (sequence.empty()) return "ε";
  std::ostringstream os;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) os << '.';
    os << sequence[i];
  }
  return os.str();
}

void write_spanner(std::ostream& out, const SpannerGraph& graph) {
  for (const auto& e : graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_weight(e.weight) << ' '
        << (e.kind == EdgeKind::kTree ? 'T' : 'S') << '\n';
  }
}

void write_decomposition(std::ostream& out, const CanonicalDecomposition& dec) {
  for (const auto& sub : dec.subtrees()) {
    out << format_sequence(sub.sequence) << " | " << sub.root << " | "
        << sub.leftmost << " |";
    for (Vertex c : sub.cut) out << ' ' << c;
    out << '\n';
  }
}

}  // namespace spanroute
