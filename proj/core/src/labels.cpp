#include "spanroute/labels.hpp"

#include <ostream>

#include "spanroute/tree_io.hpp"

namespace spanroute {

IntervalLabel label_of(const RootedTree& tree, Vertex v) {
  return {tree.low(v), tree.rank(v)};
}

std::vector<LocalView> assign_labels(const RootedTree& tree,
                                     const SpannerGraph& graph) {
  std::vector<LocalView> views(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto v = static_cast<Vertex>(i);
    auto& view = views[i];
    view.self = v;
    view.label = label_of(tree, v);
    const auto adjacent = graph.neighbours(v);
    view.neighbours.reserve(adjacent.size());
    for (const auto& a : adjacent) {
      Relation relation = Relation::kShortcut;
      if (a.kind == EdgeKind::kTree) {
        relation = tree.parent(v) == a.vertex ? Relation::kParent
                                              : Relation::kChild;
      }
      view.neighbours.push_back(
          {a.vertex, label_of(tree, a.vertex), a.weight, relation});
    }
  }
  return views;
}

int label_integer_bits(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n + 1) ++bits;
  return bits;
}

std::vector<std::size_t> label_storage_bits(const std::vector<LocalView>& views) {
  const auto width = static_cast<std::size_t>(label_integer_bits(views.size()));
  std::vector<std::size_t> bits;
  bits.reserve(views.size());
  for (const auto& view : views) {
    bits.push_back(2 * width * (1 + view.neighbours.size()));
  }
  return bits;
}

namespace {
const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kParent:
      return "parent";
    case Relation::kChild:
      return "child";
    case Relation::kShortcut:
      return "shortcut";
  }
  return "?";
}
}  // namespace

void write_labels(std::ostream& out, const std::vector<LocalView>& views) {
  for (const auto& view : views) {
    out << view.self << ' ' << view.label.low << ' ' << view.label.rank << '\n';
  }
}

void write_views(std::ostream& out, const std::vector<LocalView>& views) {
  for (const auto& view : views) {
    out << view.self << " |";
    for (const auto& nb : view.neighbours) {
      out << " (" << nb.vertex << ',' << nb.label.low << ',' << nb.label.rank
          << ',' << format_weight(nb.weight) << ',' << relation_name(nb.relation)
          << ')';
    }
    out << '\n';
  }
}

}  // namespace spanroute
