#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spanroute/metric.hpp"
#include "spanroute/tree.hpp"

namespace spanroute {

/// All generators draw from std::mt19937_64 seeded with the given seed.
/// Reals are (next() >> 11) * 2^-53 and integers next() % bound, so a seed
/// reproduces the same instance wherever mt19937_64 is available.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in (0, 1].
  double unit_weight() { return 1.0 - uniform(); }
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

enum class TreeShape { kRandomRecursive, kPath, kStar, kCaterpillar, kBalanced };
enum class PointShape { kGrid, kUniform };

/// "random-recursive-tree", "path", "star", "caterpillar", "balanced-b-ary".
std::optional<TreeShape> parse_tree_shape(const std::string& name);
std::string tree_shape_name(TreeShape shape);
/// "grid-points", "uniform-points".
std::optional<PointShape> parse_point_shape(const std::string& name);
std::string point_shape_name(PointShape shape);

/// Root is vertex 0; weights uniform in (0, 1]. `branching` only affects the
/// balanced shape.
RootedTree generate_tree(TreeShape shape, std::size_t n, std::uint64_t seed,
                         std::size_t branching = 2);

/// Grid: first n points of a ceil(sqrt n)-wide unit grid, row-major.
/// Uniform: n distinct points uniform in [0, sqrt n]^2.
std::vector<Point2> generate_points(PointShape shape, std::size_t n,
                                    std::uint64_t seed);

/// Full distance matrix of uniform points, for exercising the explicit-metric
/// path.
std::vector<std::vector<double>> generate_explicit_matrix(std::size_t n,
                                                          std::uint64_t seed);

}  // namespace spanroute
