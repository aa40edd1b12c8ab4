#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "axm/mesh.hpp"
#include "axm/types.hpp"

namespace axm {

/// Barycentric points and weights on the reference triangle; weights sum to 1.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Degree-5, 7-point rule with all points strictly interior.
const QuadratureRule& triangle_rule();

/// Two-point Gauss-Legendre on [0, 1]: abscissae and weights.
struct LineRule {
  std::array<double, 2> t;
  std::array<double, 2> w;
};
const LineRule& line_rule();

/// One quadrature point of an element: barycentric coordinates in the parent
/// triangle, absolute weight (area included) and physical location.
struct QuadPoint {
  std::array<double, 3> bary;
  double weight;
  Point p;
};

/// Quadrature point sets for every element of a mesh. Elements touching a
/// singular point get a graded subdivision toward it; elements closer than h
/// get one level of 4x subdivision. Everything else uses the plain rule.
class ElementQuadrature {
 public:
  static constexpr int kGradedDepth = 12;

  explicit ElementQuadrature(const TriangleMesh& mesh, std::optional<Point> singular_point = std::nullopt);

  std::span<const QuadPoint> points(int t) const {
    const auto b = offsets_[static_cast<std::size_t>(t)];
    const auto e = offsets_[static_cast<std::size_t>(t) + 1];
    return {points_.data() + b, e - b};
  }
  const std::optional<Point>& singular_point() const { return singular_; }
  /// Position of a point (obtained from points()) in the flat list of all points.
  std::size_t index_of(const QuadPoint& q) const { return static_cast<std::size_t>(&q - points_.data()); }
  std::size_t total_points() const { return points_.size(); }

 private:
  std::optional<Point> singular_;
  std::vector<std::size_t> offsets_;
  std::vector<QuadPoint> points_;
};

}  // namespace axm
