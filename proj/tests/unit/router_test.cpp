#include <gtest/gtest.h>

#include <sstream>

#include "spanroute/labels.hpp"
#include "spanroute/oracles.hpp"
#include "spanroute/router.hpp"
#include "spanroute/spanner.hpp"
#include "test_util.hpp"

namespace spanroute {
namespace {

using testing::path_tree;
using testing::random_tree;

NeighbourEntry entry(Vertex v, int low, int rank, Relation r = Relation::kShortcut) {
  return {v, {low, rank}, 1.0, r};
}

// Hand-built views: labels are consistent with some tree but nothing else
// about the tree is needed.
TEST(Decide, CaseZero) {
  LocalView view{0, {2, 2}, {entry(1, 1, 3, Relation::kParent), entry(5, 5, 5)}};
  const auto d = decide(view, {5, 5});
  EXPECT_EQ(d.next, 5);
  EXPECT_EQ(d.route_case, RouteCase::kAdjacent);
  EXPECT_STREQ(case_name(d.route_case), "0");
}

TEST(Decide, CaseOneTakesDeepestAncestorOfDest) {
  LocalView view{0, {1, 10},
                 {entry(1, 1, 6, Relation::kChild), entry(2, 3, 5), entry(3, 7, 9)}};
  const auto d = decide(view, {4, 4});
  EXPECT_EQ(d.next, 2);
  EXPECT_EQ(d.route_case, RouteCase::kDown);
}

TEST(Decide, CaseTwoTakesHighestBelowDest) {
  LocalView view{0, {2, 2}, {entry(1, 1, 3, Relation::kParent), entry(4, 1, 8)}};
  const auto d = decide(view, {1, 12});
  EXPECT_EQ(d.next, 4);
  EXPECT_EQ(d.route_case, RouteCase::kUp);
}

TEST(Decide, CaseThreeB) {
  LocalView view{0, {2, 2},
                 {entry(1, 1, 3, Relation::kParent), entry(6, 4, 6), entry(7, 4, 7)}};
  const auto d = decide(view, {5, 5});
  EXPECT_EQ(d.next, 6);
  EXPECT_EQ(d.route_case, RouteCase::kCrossDown);
  EXPECT_STREQ(case_name(d.route_case), "3b");
}

TEST(Decide, CaseThreeA) {
  LocalView view{0, {2, 2}, {entry(1, 1, 3, Relation::kParent), entry(4, 1, 4)}};
  const auto d = decide(view, {6, 6});
  EXPECT_EQ(d.next, 4);
  EXPECT_EQ(d.route_case, RouteCase::kClimbAside);
  EXPECT_STREQ(case_name(d.route_case), "3a");
}

TEST(Decide, CaseThreeAFallsBackToParent) {
  // The parent is an ancestor of both, so no neighbour qualifies.
  LocalView view{0, {2, 2}, {entry(1, 1, 4, Relation::kParent)}};
  const auto d = decide(view, {3, 3});
  EXPECT_EQ(d.next, 1);
  EXPECT_EQ(d.route_case, RouteCase::kClimbAside);
}

TEST(Decide, Errors) {
  LocalView view{0, {2, 2}, {entry(1, 1, 3, Relation::kParent)}};
  EXPECT_THROW(decide(view, {2, 2}), std::invalid_argument);
  LocalView isolated{0, {1, 1}, {}};
  EXPECT_THROW(decide(isolated, {2, 2}), RoutingError);
}

TEST(Simulate, CompleteGraphIsOneHop) {
  const auto t = path_tree({1.0, 1.0, 1.0});
  const auto r = build_spanner(t, 4);
  const auto views = assign_labels(t, r.graph);
  for (Vertex u = 0; u < 4; ++u) {
    for (Vertex v = 0; v < 4; ++v) {
      if (u == v) continue;
      const auto trace = simulate(views, u, v, 16);
      EXPECT_EQ(trace.hop_count(), 1u);
      EXPECT_EQ(trace.steps[1].route_case, RouteCase::kAdjacent);
    }
  }
}

TEST(Simulate, StarLeafToLeaf) {
  const auto t = generate_tree(TreeShape::kStar, 30, 3);
  const auto r = build_spanner(t, 4);
  const auto views = assign_labels(t, r.graph);
  for (Vertex u = 1; u < 30; ++u) {
    for (Vertex v = 1; v < 30; ++v) {
      if (u == v) continue;
      const auto trace = simulate(views, u, v, 64);
      EXPECT_LE(trace.hop_count(), 2u);
      EXPECT_TRUE(relatively_equal(trace.total_weight, t.distance(u, v)));
    }
  }
}

TEST(Simulate, AdjacentIsOneHop) {
  const auto t = random_tree(50, 2);
  const auto r = build_spanner(t, 4);
  const auto views = assign_labels(t, r.graph);
  const auto trace = simulate(views, 5, t.parent(5), 64);
  EXPECT_EQ(trace.hop_count(), 1u);
  EXPECT_DOUBLE_EQ(trace.total_weight, t.parent_weight(5));
}

TEST(Simulate, RejectsBadEndpoints) {
  const auto t = random_tree(10, 2);
  const auto r = build_spanner(t, 4);
  const auto views = assign_labels(t, r.graph);
  EXPECT_THROW(simulate(views, 3, 3, 64), std::invalid_argument);
  EXPECT_THROW(simulate(views, 3, 99, 64), TreeError);
}

TEST(Simulate, BudgetExhaustionKeepsTrace) {
  const auto t = path_tree(std::vector<double>(40, 1.0));
  const auto r = build_spanner(t, 4);
  const auto views = assign_labels(t, r.graph);
  try {
    simulate(views, 0, 40, 1);
    // A single hop may already suffice when 0 and 40 share a cut set.
  } catch (const RoutingError& e) {
    EXPECT_GE(e.trace().steps.size(), 1u);
    EXPECT_EQ(e.trace().steps.front().vertex, 0);
  }
}

TEST(Envelope, Formulas) {
  EXPECT_EQ(hop_envelope(0), 4u);
  EXPECT_EQ(hop_envelope(3), 28u);
  EXPECT_EQ(hop_budget(3), 64u);
}

class AllPairs : public ::testing::TestWithParam<std::tuple<std::size_t, std::uint64_t>> {};

TEST_P(AllPairs, ExactOnPathMonotoneAudited) {
  const auto [k, seed] = GetParam();
  const std::size_t n = 150;
  const auto t = random_tree(n, seed);
  const auto r = build_spanner(t, k);
  const auto views = assign_labels(t, r.graph);
  const auto K = r.decomposition.max_sequence_length();
  std::size_t climb_checks = 0;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      if (u == v) continue;
      const auto trace = simulate(views, u, v, hop_budget(K));
      ASSERT_EQ(trace.steps.back().vertex, v);
      ASSERT_TRUE(relatively_equal(trace.total_weight, naive_tree_distance(t, u, v)));
      const auto visited = trace.vertices();
      ASSERT_TRUE(is_subsequence(visited, naive_tree_path(t, u, v)));
      ASSERT_LE(trace.hop_count(), hop_envelope(K));
      // Consecutive vertices are adjacent in G.
      for (std::size_t i = 1; i < visited.size(); ++i) {
        ASSERT_TRUE(r.graph.has_edge(visited[i - 1], visited[i]));
      }
      const auto audit = audit_trace(t, r.decomposition, views, trace, u, v);
      ASSERT_TRUE(audit.ok()) << u << "->" << v
                              << " seq=" << audit.sequence_violations
                              << " climb=" << audit.climb_mismatches;
      climb_checks += audit.climb_checks;
    }
  }
  EXPECT_GT(climb_checks, 0u);
}

INSTANTIATE_TEST_SUITE_P(KSeed, AllPairs,
                         ::testing::Combine(::testing::Values(4u, 8u),
                                            ::testing::Values(1u, 2u)));

TEST(Trace, DumpFormat) {
  const auto t = path_tree(std::vector<double>(12, 0.5));
  const auto r = build_spanner(t, 4);
  const auto views = assign_labels(t, r.graph);
  const auto trace = simulate(views, 12, 0, 64);
  std::ostringstream out;
  write_trace(out, trace);
  EXPECT_EQ(out.str().rfind("0 12 - 0 0\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : out.str()) lines += c == '\n';
  EXPECT_EQ(lines, trace.steps.size());
}

}  // namespace
}  // namespace spanroute
