#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "spanroute/spanner.hpp"
#include "spanroute/tree.hpp"

namespace spanroute {

/// [low, rank] from a post-order traversal.
struct IntervalLabel {
  int low = 0;
  int rank = 0;

  /// True when `other` is a descendant of the labelled vertex (reflexive).
  constexpr bool contains(const IntervalLabel& other) const noexcept {
    return low <= other.rank && other.rank <= rank;
  }
  constexpr int width() const noexcept { return rank - low; }
  friend constexpr bool operator==(const IntervalLabel&,
                                   const IntervalLabel&) = default;
};

/// rank(w) in [low(v), rank(v)].
constexpr bool is_descendant(const IntervalLabel& w, const IntervalLabel& v) {
  return v.contains(w);
}

enum class Relation { kParent, kChild, kShortcut };

struct NeighbourEntry {
  Vertex vertex = kNoVertex;
  IntervalLabel label;
  double weight = 0.0;
  Relation relation = Relation::kShortcut;
};

/// Everything a vertex may consult when forwarding a message: its own label
/// and the labels of its spanner neighbours.
struct LocalView {
  Vertex self = kNoVertex;
  IntervalLabel label;
  std::vector<NeighbourEntry> neighbours;
};

IntervalLabel label_of(const RootedTree& tree, Vertex v);

/// One view per vertex, indexed by vertex id.
std::vector<LocalView> assign_labels(const RootedTree& tree,
                                     const SpannerGraph& graph);

/// ceil(log2(n + 1)): width of one label integer.
int label_integer_bits(std::size_t n);

/// 2 * ceil(log2(n + 1)) * (1 + degree) per vertex: the own label plus one
/// label per neighbour, two integers each.
std::vector<std::size_t> label_storage_bits(const std::vector<LocalView>& views);

/// `v L rank` lines.
void write_labels(std::ostream& out, const std::vector<LocalView>& views);
/// `v | (nbr,L,rank,weight,relation)*` lines.
void write_views(std::ostream& out, const std::vector<LocalView>& views);

}  // namespace spanroute
