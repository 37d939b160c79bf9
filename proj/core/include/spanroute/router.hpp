#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanroute/labels.hpp"
#include "spanroute/spanner.hpp"
#include "spanroute/tree.hpp"

namespace spanroute {

enum class RouteCase { kAdjacent, kDown, kUp, kClimbAside, kCrossDown };

/// "0", "1", "2", "3a", "3b".
const char* case_name(RouteCase c);

/// One forwarding step. The two-step plans of the routing rules collapse to
/// single hops: the second step of each plan is what the next vertex decides
/// on its own.
struct Decision {
  Vertex next = kNoVertex;
  RouteCase route_case = RouteCase::kAdjacent;
};

/// The header carries the destination label only; destination_id is trace
/// bookkeeping and is never read by decide().
struct MessageHeader {
  IntervalLabel destination;
  Vertex destination_id = kNoVertex;
};

struct TraceStep {
  Vertex vertex = kNoVertex;
  /// Case that produced the hop into `vertex`; unset for the source.
  RouteCase route_case = RouteCase::kAdjacent;
  double edge_weight = 0.0;
  double cumulative_weight = 0.0;
};

struct RouteTrace {
  std::vector<TraceStep> steps;  // steps.front() is the source
  double total_weight = 0.0;

  std::size_t hop_count() const noexcept {
    return steps.empty() ? 0 : steps.size() - 1;
  }
  std::vector<Vertex> vertices() const;
};

class RoutingError : public std::runtime_error {
 public:
  RoutingError(const std::string& what, RouteTrace partial)
      : std::runtime_error(what), trace_(std::move(partial)) {}
  const RouteTrace& trace() const noexcept { return trace_; }

 private:
  RouteTrace trace_;
};

/// Local routing decision at `view` towards `dest`. Reads nothing but the
/// view and the destination label.
///
///  0   dest is a neighbour.
///  1   self is an ancestor of dest: deepest neighbour that is an ancestor of
///      dest.
///  2   self is a descendant of dest: highest neighbour that is an ancestor
///      of self and a descendant of dest.
///  3b  unrelated, some neighbour is an ancestor of dest but not of self:
///      the deepest such neighbour.
///  3a  unrelated otherwise: highest neighbour that is an ancestor of self
///      but not of dest, or the parent when there is none.
///
/// Throws std::invalid_argument when dest is the view's own label and
/// RoutingError when no neighbour qualifies (malformed input).
Decision decide(const LocalView& view, const IntervalLabel& dest);

/// Envelope on hop count: 8K + 4 for max canonical-sequence length K.
std::size_t hop_envelope(std::size_t max_sequence_length);
/// Abort threshold for simulate: 16K + 16.
std::size_t hop_budget(std::size_t max_sequence_length);

/// Forwards a message from source to dest by calling decide() afresh at every
/// vertex. Throws RoutingError (with the partial trace) when decide fails or
/// the hop budget runs out.
RouteTrace simulate(std::span<const LocalView> views, Vertex source,
                    Vertex dest, std::size_t max_hops);

/// `step vertex case edge_weight cumulative_weight` lines; the source row
/// uses case "-".
void write_trace(std::ostream& out, const RouteTrace& trace);

bool relatively_equal(double a, double b, double tolerance = 1e-9);

/// Global-knowledge checks of a finished trace. Never consulted while routing.
struct TraceAudit {
  bool reached = false;
  bool weight_exact = false;
  /// Visited vertices appear in order along the tree path.
  bool on_tree_path = false;
  /// Once at an ancestor of dest, every later vertex is one too.
  bool ancestor_monotone = false;
  /// Case 1/2 steps whose canonical sequence did not move as required.
  std::size_t sequence_violations = 0;
  /// Case 3a steps compared against routing to lca(u, dest).
  std::size_t climb_checks = 0;
  std::size_t climb_mismatches = 0;
  /// Mismatches explained by lca being adjacent, where the lca route takes
  /// the direct edge.
  std::size_t climb_lca_adjacent = 0;
  /// Hops where the fresh decision at x differs from the textbook second
  /// step (parent of x, or child of x towards dest). Informational.
  std::size_t second_hop_divergences = 0;

  bool ok() const noexcept {
    return reached && weight_exact && on_tree_path && ancestor_monotone &&
           sequence_violations == 0 && climb_mismatches == 0;
  }
};

TraceAudit audit_trace(const RootedTree& tree, const CanonicalDecomposition& dec,
                       std::span<const LocalView> views, const RouteTrace& trace,
                       Vertex source, Vertex dest);

}  // namespace spanroute
