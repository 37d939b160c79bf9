#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace spanroute {

using Point = std::int32_t;

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Finite metric on points 0..n-1, rescaled so the closest pair is at
/// distance 1.
class PointMetric {
 public:
  enum class Kind { kEuclidean2d, kExplicit };

  PointMetric() = default;

  /// Throws MetricError on coincident points or non-finite coordinates.
  static PointMetric euclidean(std::vector<Point2> points);
  /// Throws MetricError unless the matrix is square, symmetric, has a zero
  /// diagonal, positive off-diagonal entries and satisfies the triangle
  /// inequality (checked up to a 1e-9 relative slack).
  static PointMetric explicit_matrix(std::vector<std::vector<double>> matrix);

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return size_; }
  double distance(Point a, Point b) const;
  /// Largest pairwise distance after rescaling.
  double diameter() const noexcept { return diameter_; }
  /// Factor applied to the input distances.
  double scale() const noexcept { return scale_; }

  const std::vector<Point2>& coordinates() const noexcept { return coords_; }
  const std::vector<double>& row(Point p) const { return matrix_.at(p); }

 private:
  void normalise();

  Kind kind_ = Kind::kEuclidean2d;
  std::size_t size_ = 0;
  double diameter_ = 0.0;
  double scale_ = 1.0;
  std::vector<Point2> coords_;
  std::vector<std::vector<double>> matrix_;
};

/// Reads either `id x y` lines (Euclidean) or `n` followed by n rows of n
/// distances (explicit). '#' lines are comments.
struct ParsedPoints {
  PointMetric metric;
  std::vector<std::string> external_ids;
};
ParsedPoints read_points(std::istream& in);
ParsedPoints read_points_file(const std::string& path);
void write_points(std::ostream& out, const std::vector<Point2>& points);

/// A distance label: enough per-point data to estimate the distance to any
/// other point from the two labels alone.
struct DistanceLabel {
  Point point = -1;
  std::vector<double> data;
};

/// Approximate distance labelling with d <= estimate <= (1 + delta) d.
class DistanceLabeling {
 public:
  virtual ~DistanceLabeling() = default;
  virtual DistanceLabel label(Point p) const = 0;
  virtual double estimate(const DistanceLabel& a,
                          const DistanceLabel& b) const = 0;
  virtual double delta() const noexcept = 0;
  virtual std::size_t label_bits(const DistanceLabel& l) const = 0;
};

/// Exact labels: coordinates for Euclidean metrics, the full distance row for
/// explicit ones. delta = 0.
class ExactDistanceLabeling final : public DistanceLabeling {
 public:
  explicit ExactDistanceLabeling(const PointMetric& metric) : metric_(&metric) {}

  DistanceLabel label(Point p) const override;
  double estimate(const DistanceLabel& a, const DistanceLabel& b) const override;
  double delta() const noexcept override { return 0.0; }
  /// 64 bits per stored number plus the point id.
  std::size_t label_bits(const DistanceLabel& l) const override;

 private:
  const PointMetric* metric_;
};

}  // namespace spanroute
