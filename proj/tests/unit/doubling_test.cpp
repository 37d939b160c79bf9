#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "spanroute/doubling.hpp"
#include "spanroute/generators.hpp"
#include "spanroute/oracles.hpp"

namespace spanroute {
namespace {

PointMetric grid(std::size_t n) {
  return PointMetric::euclidean(generate_points(PointShape::kGrid, n, 0));
}

PointMetric uniform(std::size_t n, std::uint64_t seed) {
  return PointMetric::euclidean(generate_points(PointShape::kUniform, n, seed));
}

// Points 0, 1, 3, 7, ... on a line: D grows like 2^n, so D / n > 1.
PointMetric spread_line(std::size_t n) {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({std::ldexp(1.0, static_cast<int>(i)) - 1.0, 0.0});
  return PointMetric::euclidean(pts);
}

TEST(NetHierarchy, SinglePoint) {
  const auto m = PointMetric::euclidean({{3, 3}});
  const auto levels = build_net_hierarchy(m);
  ASSERT_EQ(levels.levels.size(), 1u);
  EXPECT_EQ(levels.levels[0], std::vector<Point>{0});
}

TEST(NetHierarchy, TwoPoints) {
  const auto m = PointMetric::euclidean({{0, 0}, {1, 0}});
  const auto levels = build_net_hierarchy(m);
  ASSERT_EQ(levels.levels.size(), 2u);
  EXPECT_EQ(levels.levels[0].size(), 2u);
  EXPECT_EQ(levels.levels[1], std::vector<Point>{0});
}

TEST(NetHierarchy, GridNetsExhaustive) {
  const auto m = grid(64);
  const auto levels = build_net_hierarchy(m);
  // Independent scan: packing and covering per level.
  for (std::size_t i = 1; i < levels.levels.size(); ++i) {
    const double r = std::ldexp(1.0, static_cast<int>(i));
    for (Point a : levels.levels[i]) {
      for (Point b : levels.levels[i]) {
        if (a != b) {
          EXPECT_GT(m.distance(a, b), r);
        }
      }
    }
    for (Point y : levels.levels[i - 1]) {
      bool covered = false;
      for (Point x : levels.levels[i]) covered = covered || m.distance(x, y) <= r;
      EXPECT_TRUE(covered);
    }
  }
  EXPECT_EQ(check_net_levels(m, levels).total(), 0u);
}

TEST(NetTree, TwoPointsHaveLevelZeroCrossEdge) {
  const auto m = PointMetric::euclidean({{0, 0}, {1, 0}});
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  EXPECT_EQ(t.top_level(), 1);
  EXPECT_TRUE(t.has_cross_edge(t.leaf(0), t.leaf(1)));
  EXPECT_EQ(t.node(t.leaf(1)).parent, t.root());
}

TEST(NetTree, GridStructureExhaustive) {
  for (double gamma : {5.0, 8.0, 16.0}) {
    const auto m = grid(64);
    const auto t = NetTree::build(m, build_net_hierarchy(m), {gamma, 4});
    const auto c = check_net_tree(t);
    EXPECT_EQ(c.total(), 0u) << "parent " << c.parent << " cross " << c.cross
                             << " monotone " << c.monotone << " climb " << c.climb;
  }
}

TEST(NetTree, ParametersValidated) {
  const auto m = grid(9);
  const auto levels = build_net_hierarchy(m);
  EXPECT_THROW(NetTree::build(m, levels, {4.0, 4}), std::invalid_argument);
  EXPECT_THROW(NetTree::build(m, levels, {8.0, 3}), std::invalid_argument);
}

TEST(NetTree, SmallDiameterIsOneLightSubtree) {
  const auto m = grid(64);
  ASSERT_LE(m.diameter(), 64.0);
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  EXPECT_EQ(t.light_level(), t.top_level());
  ASSERT_EQ(t.light_subtrees().size(), 1u);
  for (const auto& node : t.nodes()) EXPECT_EQ(node.light, 0);
}

TEST(NetTree, LightSubtreesCoverLowLevels) {
  const auto m = spread_line(12);
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  const int c = static_cast<int>(std::ceil(std::log2(m.diameter() / 12.0)));
  EXPECT_EQ(t.light_level(), std::clamp(c, 0, t.top_level()));
  EXPECT_GT(t.light_level(), 0);
  for (const auto& node : t.nodes()) {
    EXPECT_EQ(node.light >= 0, node.level <= t.light_level());
  }
  for (const auto& light : t.light_subtrees()) {
    EXPECT_EQ(t.node(light.root).level, t.light_level());
    EXPECT_EQ(light.tree.size(), light.nodes.size());
  }
}

TEST(TargetInterval, Examples) {
  const auto a = cross_edge_target_interval(12.0, 8.0, 0.0, 10);
  EXPECT_EQ(a.lo, 0);
  EXPECT_EQ(a.hi, 2);
  const auto b = cross_edge_target_interval(1.0, 8.0, 0.0, 10);
  EXPECT_EQ(b.lo, 0);
  EXPECT_EQ(b.hi, 0);
  const auto c = cross_edge_target_interval(1000.0, 8.0, 0.0, 3);
  EXPECT_EQ(c.hi, 3);
  EXPECT_THROW(cross_edge_target_interval(0.0, 8.0, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(cross_edge_target_interval(1.0, 4.0, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(cross_edge_target_interval(1.0, 8.0, -0.5, 3), std::invalid_argument);
}

TEST(TargetInterval, WidthIsConstant) {
  Rng rng(5);
  for (double gamma : {5.0, 8.0, 16.0}) {
    for (double delta : {0.0, 0.25}) {
      const int bound = static_cast<int>(std::ceil(
                            std::log2((gamma + 4) * (1 + delta) / (gamma - 4)))) + 2;
      for (int i = 0; i < 1000; ++i) {
        const double d = std::ldexp(1.0 + rng.uniform(), static_cast<int>(rng.below(30)));
        const auto in = cross_edge_target_interval(d, gamma, delta, 40);
        EXPECT_LE(in.hi - in.lo, bound);
        EXPECT_LE(in.lo, in.hi);
      }
    }
  }
}

TEST(TargetInterval, GridPairsJoinInside) {
  const auto m = grid(64);
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  for (Point p = 0; p < 64; ++p) {
    for (Point q = p + 1; q < 64; ++q) {
      const auto in = cross_edge_target_interval(m.distance(p, q), 8.0, 0.0, t.top_level());
      const int level = first_cross_edge_level(t, p, q);
      EXPECT_GE(level, in.lo);
      EXPECT_LE(level, in.hi);
    }
  }
}

TEST(RouteDoubling, TwoPoints) {
  const auto m = PointMetric::euclidean({{0, 0}, {1, 0}});
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  const ExactDistanceLabeling labels(m);
  const auto trace = route_doubling(t, labels, 0, 1);
  EXPECT_EQ(trace.hop_count(), 1u);
  EXPECT_DOUBLE_EQ(trace.total_weight, 1.0);
  EXPECT_THROW(route_doubling(t, labels, 1, 1), std::invalid_argument);
  EXPECT_THROW(route_doubling(t, labels, 0, 2), std::invalid_argument);
}

class RandomPlanar
    : public ::testing::TestWithParam<std::tuple<std::size_t, double>> {};

TEST_P(RandomPlanar, NoHeavierThanReferencePath) {
  const auto [n, gamma] = GetParam();
  const auto m = uniform(n, 3);
  const auto t = NetTree::build(m, build_net_hierarchy(m), {gamma, 4});
  const ExactDistanceLabeling labels(m);
  Rng rng(n);
  double worst = 1.0;
  for (int i = 0; i < 500; ++i) {
    const auto p = static_cast<Point>(rng.below(n));
    const auto q = static_cast<Point>(rng.below(n));
    if (p == q) continue;
    const auto trace = route_doubling(t, labels, p, q);
    ASSERT_EQ(trace.hops.back(), q);
    ASSERT_EQ(trace.hops.front(), p);
    EXPECT_LE(trace.total_weight, reference_path_weight(t, p, q) * (1 + 1e-9));
    EXPECT_GE(trace.total_weight, m.distance(p, q) * (1 - 1e-9));
    // Hops are between distinct points; weights are their distances.
    double sum = 0.0;
    for (std::size_t h = 1; h < trace.hops.size(); ++h) {
      ASSERT_NE(trace.hops[h - 1], trace.hops[h]);
      sum += m.distance(trace.hops[h - 1], trace.hops[h]);
    }
    EXPECT_NEAR(sum, trace.total_weight, 1e-9 * sum);
    worst = std::max(worst, trace.total_weight / m.distance(p, q));
  }
  RecordProperty("max_stretch", std::to_string(worst));
}

INSTANTIATE_TEST_SUITE_P(SizesGammas, RandomPlanar,
                         ::testing::Combine(::testing::Values(64u, 256u),
                                            ::testing::Values(8.0, 16.0)));

TEST(RouteDoubling, InsideOneLightSubtree) {
  const auto m = spread_line(12);
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  const ExactDistanceLabeling labels(m);
  for (Point p = 0; p < 12; ++p) {
    for (Point q = 0; q < 12; ++q) {
      if (p == q) continue;
      const auto trace = route_doubling(t, labels, p, q);
      EXPECT_LE(trace.total_weight, reference_path_weight(t, p, q) * (1 + 1e-9));
    }
  }
}

TEST(LabelBits, SingleAndTwoPoints) {
  const auto one = PointMetric::euclidean({{0, 0}});
  const auto t1 = NetTree::build(one, build_net_hierarchy(one), {});
  const ExactDistanceLabeling l1(one);
  const auto b1 = doubling_label_bits(t1, l1);
  EXPECT_EQ(b1[0].routing_bits, 0u);
  EXPECT_EQ(b1[0].distance_bits, 2u * 64 + 1);

  const auto two = PointMetric::euclidean({{0, 0}, {1, 0}});
  const auto t2 = NetTree::build(two, build_net_hierarchy(two), {});
  EXPECT_EQ(t2.nodes_of(0).size(), 2u);
  EXPECT_EQ(t2.nodes_of(1).size(), 1u);
  const auto b2 = doubling_label_bits(t2, ExactDistanceLabeling(two));
  EXPECT_GT(b2[0].routing_bits, b2[1].routing_bits);
}

TEST(NetTree, DumpFormat) {
  const auto m = PointMetric::euclidean({{0, 0}, {1, 0}});
  const auto t = NetTree::build(m, build_net_hierarchy(m), {});
  std::ostringstream out;
  write_net_tree(out, t);
  EXPECT_EQ(out.str(), "0 0 0 2\n0 1 1 2\n1 2 0 -1\ncross 0 1\nlight-root 2\n");
}

}  // namespace
}  // namespace spanroute
