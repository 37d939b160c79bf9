#include <benchmark/benchmark.h>

#include "spanroute/doubling.hpp"
#include "spanroute/generators.hpp"
#include "spanroute/labels.hpp"
#include "spanroute/router.hpp"
#include "spanroute/spanner.hpp"

namespace {

using namespace spanroute;

void BM_BuildSpanner(benchmark::State& state) {
  const auto tree = generate_tree(TreeShape::kRandomRecursive,
                                  static_cast<std::size_t>(state.range(0)), 1);
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_spanner(tree, k));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildSpanner)
    ->ArgsProduct({{1 << 10, 1 << 13, 1 << 16}, {4, 16}})
    ->Unit(benchmark::kMillisecond);

void BM_TreeRoute(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto tree = generate_tree(TreeShape::kRandomRecursive, n, 1);
  const auto sp = build_spanner(tree, 4);
  const auto views = assign_labels(tree, sp.graph);
  Rng rng(2);
  for (auto _ : state) {
    const auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n));
    if (u == v) v = (v + 1) % static_cast<Vertex>(n);
    benchmark::DoNotOptimize(simulate(views, u, v, hop_budget(sp.decomposition.max_sequence_length())));
  }
}
BENCHMARK(BM_TreeRoute)->Arg(1 << 10)->Arg(1 << 14);

void BM_NetTreeBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto metric = PointMetric::euclidean(generate_points(PointShape::kUniform, n, 1));
  for (auto _ : state) {
    const auto levels = build_net_hierarchy(metric);
    benchmark::DoNotOptimize(NetTree::build(metric, levels, {}));
  }
}
BENCHMARK(BM_NetTreeBuild)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DoublingRoute(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto metric = PointMetric::euclidean(generate_points(PointShape::kUniform, n, 1));
  const auto tree = NetTree::build(metric, build_net_hierarchy(metric), {});
  const ExactDistanceLabeling labels(metric);
  Rng rng(3);
  for (auto _ : state) {
    const auto p = static_cast<Point>(rng.below(n));
    auto q = static_cast<Point>(rng.below(n));
    if (p == q) q = (q + 1) % static_cast<Point>(n);
    benchmark::DoNotOptimize(route_doubling(tree, labels, p, q));
  }
}
BENCHMARK(BM_DoublingRoute)->Arg(256)->Arg(1024);

}  // namespace

// The packaged benchmark_main archive is LTO-only and tied to another
// compiler build, so main comes from here.
BENCHMARK_MAIN();
