#include "spanroute/generators.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace spanroute {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::optional<TreeShape> parse_tree_shape(const std::string& name) {
  if (name == "random-recursive-tree") return TreeShape::kRandomRecursive;
  if (name == "path") return TreeShape::kPath;
  if (name == "star") return TreeShape::kStar;
  if (name == "caterpillar") return TreeShape::kCaterpillar;
  if (name == "balanced-b-ary") return TreeShape::kBalanced;
  return std::nullopt;
}

std::string tree_shape_name(TreeShape shape) {
  switch (shape) {
    case TreeShape::kRandomRecursive:
      return "random-recursive-tree";
    case TreeShape::kPath:
      return "path";
    case TreeShape::kStar:
      return "star";
    case TreeShape::kCaterpillar:
      return "caterpillar";
    case TreeShape::kBalanced:
      return "balanced-b-ary";
  }
  return "?";
}

std::optional<PointShape> parse_point_shape(const std::string& name) {
  if (name == "grid-points") return PointShape::kGrid;
  if (name == "uniform-points") return PointShape::kUniform;
  return std::nullopt;
}

std::string point_shape_name(PointShape shape) {
  return shape == PointShape::kGrid ? "grid-points" : "uniform-points";
}

RootedTree generate_tree(TreeShape shape, std::size_t n, std::uint64_t seed,
                         std::size_t branching) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (branching == 0) throw std::invalid_argument("branching must be positive");
  Rng rng(seed);
  std::vector<TreeEdge> edges;
  edges.reserve(n - 1);
  auto add = [&](std::size_t parent, std::size_t child) {
    edges.push_back({static_cast<Vertex>(parent), static_cast<Vertex>(child),
                     rng.unit_weight()});
  };
  switch (shape) {
    case TreeShape::kRandomRecursive:
      for (std::size_t v = 1; v < n; ++v) add(rng.below(v), v);
      break;
    case TreeShape::kPath:
      for (std::size_t v = 1; v < n; ++v) add(v - 1, v);
      break;
    case TreeShape::kStar:
      for (std::size_t v = 1; v < n; ++v) add(0, v);
      break;
    case TreeShape::kCaterpillar: {
      // Spine 0..s-1, then one leg per spine vertex in order.
      const std::size_t spine = (n + 1) / 2;
      for (std::size_t v = 1; v < spine; ++v) add(v - 1, v);
      for (std::size_t v = spine; v < n; ++v) add(v - spine, v);
      break;
    }
    case TreeShape::kBalanced:
      for (std::size_t v = 1; v < n; ++v) add((v - 1) / branching, v);
      break;
  }
  return RootedTree::build(n, edges, 0);
}

std::vector<Point2> generate_points(PointShape shape, std::size_t n,
                                    std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  std::vector<Point2> out;
  out.reserve(n);
  if (shape == PointShape::kGrid) {
    const auto width = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(n))));
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({static_cast<double>(i % width),
                     static_cast<double>(i / width)});
    }
    return out;
  }
  Rng rng(seed);
  const double side = std::sqrt(static_cast<double>(n));
  std::set<std::pair<double, double>> seen;
  while (out.size() < n) {
    const Point2 p{rng.uniform() * side, rng.uniform() * side};
    if (seen.emplace(p.x, p.y).second) out.push_back(p);
  }
  return out;
}

std::vector<std::vector<double>> generate_explicit_matrix(std::size_t n,
                                                          std::uint64_t seed) {
  const auto pts = generate_points(PointShape::kUniform, n, seed);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = i == j ? 0.0
                       : std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
    }
  }
  return m;
}

}  // namespace spanroute
