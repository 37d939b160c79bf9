#include "spanroute/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "spanroute/tree_io.hpp"

namespace spanroute {

PointMetric PointMetric::euclidean(std::vector<Point2> points) {
  if (points.empty()) throw MetricError("no points");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw MetricError("non-finite coordinate");
    }
  }
  PointMetric m;
  m.kind_ = Kind::kEuclidean2d;
  m.size_ = points.size();
  m.coords_ = std::move(points);
  m.normalise();
  return m;
}

PointMetric PointMetric::explicit_matrix(std::vector<std::vector<double>> matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw MetricError("empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw MetricError("matrix is not square");
    if (matrix[i][i] != 0.0) {
      throw MetricError("nonzero diagonal at " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d) || d <= 0.0) {
        throw MetricError("distance " + std::to_string(i) + "-" +
                          std::to_string(j) + " is not positive");
      }
      if (d != matrix[j][i]) {
        throw MetricError("matrix is not symmetric at " + std::to_string(i) +
                          "," + std::to_string(j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double via = matrix[i][k] + matrix[k][j];
        if (matrix[i][j] > via * (1.0 + 1e-9)) {
          throw MetricError("triangle inequality fails for " +
                            std::to_string(i) + "," + std::to_string(j) +
                            " via " + std::to_string(k));
        }
      }
    }
  }
  PointMetric m;
  m.kind_ = Kind::kExplicit;
  m.size_ = n;
  m.matrix_ = std::move(matrix);
  m.normalise();
  return m;
}

double PointMetric::distance(Point a, Point b) const {
  const auto i = static_cast<std::size_t>(a);
  const auto j = static_cast<std::size_t>(b);
  if (a < 0 || b < 0 || i >= size_ || j >= size_) {
    throw MetricError("unknown point");
  }
  if (kind_ == Kind::kExplicit) return matrix_[i][j];
  return std::hypot(coords_[i].x - coords_[j].x, coords_[i].y - coords_[j].y);
}

void PointMetric::normalise() {
  if (size_ < 2) {
    scale_ = 1.0;
    diameter_ = 0.0;
    return;
  }
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      closest = std::min(
          closest, distance(static_cast<Point>(i), static_cast<Point>(j)));
    }
  }
  if (!(closest > 0.0)) throw MetricError("two points coincide");
  scale_ = 1.0 / closest;
  if (kind_ == Kind::kExplicit) {
    for (auto& row : matrix_) {
      for (double& d : row) d *= scale_;
    }
  } else {
    for (auto& p : coords_) {
      p.x *= scale_;
      p.y *= scale_;
    }
  }
  diameter_ = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      diameter_ = std::max(
          diameter_, distance(static_cast<Point>(i), static_cast<Point>(j)));
    }
  }
}

ParsedPoints read_points(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    rows.push_back(std::move(tokens));
  }
  if (rows.empty()) throw MetricError("no points");

  auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw MetricError("bad number '" + s + "'");
    }
    if (used != s.size()) throw MetricError("bad number '" + s + "'");
    return v;
  };

  ParsedPoints out;
  if (rows.front().size() == 1) {
    const auto n = static_cast<std::size_t>(number(rows.front()[0]));
    if (rows.size() != n + 1) throw MetricError("expected n matrix rows");
    std::vector<std::vector<double>> matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i + 1].size() != n) throw MetricError("matrix row has wrong width");
      for (const auto& t : rows[i + 1]) matrix[i].push_back(number(t));
      out.external_ids.push_back(std::to_string(i));
    }
    out.metric = PointMetric::explicit_matrix(std::move(matrix));
    return out;
  }
  std::vector<Point2> points;
  for (const auto& r : rows) {
    if (r.size() != 3) throw MetricError("expected 'id x y'");
    out.external_ids.push_back(r[0]);
    points.push_back({number(r[1]), number(r[2])});
  }
  out.metric = PointMetric::euclidean(std::move(points));
  return out;
}

ParsedPoints read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricError("cannot open " + path);
  return read_points(in);
}

void write_points(std::ostream& out, const std::vector<Point2>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << i << ' ' << format_weight(points[i].x) << ' '
        << format_weight(points[i].y) << '\n';
  }
}

DistanceLabel ExactDistanceLabeling::label(Point p) const {
  DistanceLabel l;
  l.point = p;
  if (metric_->kind() == PointMetric::Kind::kEuclidean2d) {
    const auto& c = metric_->coordinates().at(static_cast<std::size_t>(p));
    l.data = {c.x, c.y};
  } else {
    l.data = metric_->row(p);
  }
  return l;
}

double ExactDistanceLabeling::estimate(const DistanceLabel& a,
                                       const DistanceLabel& b) const {
  if (metric_->kind() == PointMetric::Kind::kEuclidean2d) {
    return std::hypot(a.data[0] - b.data[0], a.data[1] - b.data[1]);
  }
  return a.data.at(static_cast<std::size_t>(b.point));
}

std::size_t ExactDistanceLabeling::label_bits(const DistanceLabel& l) const {
  std::size_t id_bits = 0;
  while ((std::size_t{1} << id_bits) < metric_->size() + 1) ++id_bits;
  return 64 * l.data.size() + id_bits;
}

}  // namespace spanroute
