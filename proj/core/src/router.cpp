#include "spanroute/router.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include "spanroute/tree_io.hpp"

namespace spanroute {

const char* case_name(RouteCase c) {
  switch (c) {
    case RouteCase::kAdjacent:
      return "0";
    case RouteCase::kDown:
      return "1";
    case RouteCase::kUp:
      return "2";
    case RouteCase::kClimbAside:
      return "3a";
    case RouteCase::kCrossDown:
      return "3b";
  }
  return "?";
}

std::vector<Vertex> RouteTrace::vertices() const {
  std::vector<Vertex> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.vertex);
  return out;
}

namespace {

// Among ancestors of a fixed vertex, deeper means smaller rank.
const NeighbourEntry* deepest(const NeighbourEntry* a, const NeighbourEntry* b) {
  if (!a) return b;
  return b->label.rank < a->label.rank ? b : a;
}

const NeighbourEntry* highest(const NeighbourEntry* a, const NeighbourEntry* b) {
  if (!a) return b;
  return b->label.rank > a->label.rank ? b : a;
}

}  // namespace

Decision decide(const LocalView& view, const IntervalLabel& dest) {
  const IntervalLabel self = view.label;
  if (self == dest) {
    throw std::invalid_argument("decide called at the destination");
  }
  for (const auto& nb : view.neighbours) {
    if (nb.label == dest) return {nb.vertex, RouteCase::kAdjacent};
  }

  if (self.contains(dest)) {
    const NeighbourEntry* x = nullptr;
    for (const auto& nb : view.neighbours) {
      if (nb.label.contains(dest)) x = deepest(x, &nb);
    }
    if (x && self.contains(x->label)) return {x->vertex, RouteCase::kDown};
  } else if (dest.contains(self)) {
    const NeighbourEntry* x = nullptr;
    for (const auto& nb : view.neighbours) {
      if (nb.label.contains(self) && dest.contains(nb.label)) {
        x = highest(x, &nb);
      }
    }
    if (x) return {x->vertex, RouteCase::kUp};
  } else {
    const NeighbourEntry* x = nullptr;
    const NeighbourEntry* y = nullptr;
    const NeighbourEntry* parent = nullptr;
    for (const auto& nb : view.neighbours) {
      const bool above_dest = nb.label.contains(dest);
      const bool above_self = nb.label.contains(self);
      if (above_dest && !above_self) x = deepest(x, &nb);
      if (above_self && !above_dest) y = highest(y, &nb);
      if (nb.relation == Relation::kParent) parent = &nb;
    }
    if (x) return {x->vertex, RouteCase::kCrossDown};
    // With no neighbour strictly between self and the lca, self is the
    // highest vertex below the lca on its side; its parent is next.
    if (!y) y = parent;
    if (y) return {y->vertex, RouteCase::kClimbAside};
  }
  throw RoutingError("no viable neighbour at vertex " + std::to_string(view.self),
                     RouteTrace{});
}

std::size_t hop_envelope(std::size_t max_sequence_length) {
  return 8 * max_sequence_length + 4;
}

std::size_t hop_budget(std::size_t max_sequence_length) {
  return 16 * max_sequence_length + 16;
}

RouteTrace simulate(std::span<const LocalView> views, Vertex source,
                    Vertex dest, std::size_t max_hops) {
  auto view_of = [&](Vertex v) -> const LocalView& {
    if (v < 0 || static_cast<std::size_t>(v) >= views.size()) {
      throw TreeError(TreeErrorKind::kUnknownVertex,
                      "unknown vertex " + std::to_string(v));
    }
    return views[static_cast<std::size_t>(v)];
  };
  const MessageHeader header{view_of(dest).label, dest};
  if (source == dest) {
    throw std::invalid_argument("source and destination coincide");
  }

  RouteTrace trace;
  trace.steps.push_back({source, RouteCase::kAdjacent, 0.0, 0.0});
  Vertex current = source;
  while (current != header.destination_id) {
    if (trace.hop_count() >= max_hops) {
      throw RoutingError("hop budget of " + std::to_string(max_hops) +
                             " exhausted",
                         trace);
    }
    const auto& view = view_of(current);
    Decision d;
    try {
      d = decide(view, header.destination);
    } catch (const RoutingError& e) {
      throw RoutingError(e.what(), trace);
    }
    double weight = 0.0;
    for (const auto& nb : view.neighbours) {
      if (nb.vertex == d.next) {
        weight = nb.weight;
        break;
      }
    }
    trace.total_weight += weight;
    trace.steps.push_back({d.next, d.route_case, weight, trace.total_weight});
    current = d.next;
  }
  return trace;
}

void write_trace(std::ostream& out, const RouteTrace& trace) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out << i << ' ' << s.vertex << ' ' << (i == 0 ? "-" : case_name(s.route_case))
        << ' ' << format_weight(s.edge_weight) << ' '
        << format_weight(s.cumulative_weight) << '\n';
  }
}

bool relatively_equal(double a, double b, double tolerance) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tolerance * scale;
}

namespace {

bool is_prefix(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t m = 0;
  while (m < a.size() && m < b.size() && a[m] == b[m]) ++m;
  return m;
}

// Progress required of one Case 1/2 step from u to u' when routing to v.
bool sequence_progress_ok(const std::vector<int>& su, const std::vector<int>& su2,
                          const std::vector<int>& sv) {
  if (su.size() < sv.size() && is_prefix(su, sv)) {
    return su2.size() > su.size() && is_prefix(su2, sv);
  }
  if (sv.size() < su.size() && is_prefix(sv, su)) {
    return su2.size() < su.size() && is_prefix(sv, su2);
  }
  const std::size_t m = common_prefix(su, sv);
  const std::vector<int> shared(su.begin(), su.begin() + static_cast<long>(m));
  return su2.size() < su.size() && is_prefix(shared, su2);
}

Vertex child_towards(const RootedTree& tree, Vertex x, Vertex dest) {
  for (Vertex c : tree.children(x)) {
    if (tree.is_ancestor(c, dest)) return c;
  }
  return kNoVertex;
}

}  // namespace

TraceAudit audit_trace(const RootedTree& tree, const CanonicalDecomposition& dec,
                       std::span<const LocalView> views, const RouteTrace& trace,
                       Vertex source, Vertex dest) {
  TraceAudit audit;
  const auto hops = trace.vertices();
  if (hops.empty() || hops.front() != source) return audit;
  audit.reached = hops.back() == dest;
  audit.weight_exact =
      relatively_equal(trace.total_weight, tree.distance(source, dest));

  const auto path = tree.path(source, dest);
  std::unordered_map<Vertex, std::size_t> position;
  for (std::size_t i = 0; i < path.size(); ++i) position[path[i]] = i;
  audit.on_tree_path = true;
  for (std::size_t i = 0; i < hops.size(); ++i) {
    const auto it = position.find(hops[i]);
    if (it == position.end() ||
        (i > 0 && it->second <= position[hops[i - 1]])) {
      audit.on_tree_path = false;
      break;
    }
  }

  audit.ancestor_monotone = true;
  bool above = false;
  for (Vertex h : hops) {
    const bool now = tree.is_ancestor(h, dest);
    if (above && !now) audit.ancestor_monotone = false;
    above = above || now;
  }

  // Canonical-sequence progress over Case 1/2 steps. A hop that stays inside
  // the same cut set is the first half of a two-step plan.
  const auto& sv = dec.sequence(dest);
  std::size_t j = 0;
  while (j + 1 < hops.size()) {
    const RouteCase c = trace.steps[j + 1].route_case;
    if (c != RouteCase::kDown && c != RouteCase::kUp) {
      ++j;
      continue;
    }
    const auto& su = dec.sequence(hops[j]);
    std::size_t k = j + 1;
    if (hops[k] != dest && dec.sequence(hops[k]) == su && k + 1 < hops.size()) {
      ++k;
    }
    if (!sequence_progress_ok(su, dec.sequence(hops[k]), sv)) {
      ++audit.sequence_violations;
    }
    j = k;
  }

  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const Vertex u = hops[i - 1];
    const Vertex x = hops[i];
    const RouteCase c = trace.steps[i].route_case;
    if (c == RouteCase::kClimbAside) {
      ++audit.climb_checks;
      const Vertex top = tree.lca(u, dest);
      const auto& view = views[static_cast<std::size_t>(u)];
      const Decision again = decide(view, label_of(tree, top));
      if (again.next != x) {
        if (again.route_case == RouteCase::kAdjacent && again.next == top) {
          ++audit.climb_lca_adjacent;
        } else {
          ++audit.climb_mismatches;
        }
      }
    }
    if (x == dest || i + 1 >= hops.size() || c == RouteCase::kAdjacent) continue;
    Vertex planned = kNoVertex;
    if (c == RouteCase::kUp || c == RouteCase::kClimbAside) {
      planned = tree.parent(x);
    } else {
      planned = child_towards(tree, x, dest);
    }
    if (planned != hops[i + 1]) ++audit.second_hop_divergences;
  }
  return audit;
}

}  // namespace spanroute
