#include "axm/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace axm {

const QuadratureRule& triangle_rule() {
  static const QuadratureRule rule = [] {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
    const double w1 = (155.0 - s15) / 1200.0, w2 = (155.0 + s15) / 1200.0;
    QuadratureRule q;
    q.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {a1, a1, b1}, {a1, b1, a1}, {b1, a1, a1},
                {a2, a2, b2}, {a2, b2, a2}, {b2, a2, a2}};
    q.weights = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
    return q;
  }();
  return rule;
}

const LineRule& line_rule() {
  static const LineRule rule{{0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)}, {0.5, 0.5}};
  return rule;
}

namespace {

using Bary = std::array<double, 3>;

Point to_point(const std::array<Point, 3>& p, const Bary& b) {
  return {b[0] * p[0].r + b[1] * p[1].r + b[2] * p[2].r, b[0] * p[0].z + b[1] * p[1].z + b[2] * p[2].z};
}

Bary mid(const Bary& a, const Bary& b) { return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])}; }

/// Appends the plain rule on the sub-triangle with barycentric corners c (relative area `frac`).
void add_rule(const std::array<Point, 3>& p, double area, const std::array<Bary, 3>& c, double frac,
              std::vector<QuadPoint>& out) {
  const auto& q = triangle_rule();
  for (std::size_t i = 0; i < q.weights.size(); ++i) {
    const auto& l = q.points[i];
    Bary b{};
    for (int j = 0; j < 3; ++j) b[j] = l[0] * c[0][j] + l[1] * c[1][j] + l[2] * c[2][j];
    out.push_back({b, q.weights[i] * area * frac, to_point(p, b)});
  }
}

/// Midpoint split; recurse on children that contain `corner_index` (a parent vertex).
void add_graded(const std::array<Point, 3>& p, double area, const std::array<Bary, 3>& c, double frac, int depth,
                int corner_local, std::vector<QuadPoint>& out) {
  if (depth == 0) {
    add_rule(p, area, c, frac, out);
    return;
  }
  const Bary m01 = mid(c[0], c[1]), m12 = mid(c[1], c[2]), m20 = mid(c[2], c[0]);
  const std::array<std::array<Bary, 3>, 4> kids{{{c[0], m01, m20}, {m01, c[1], m12}, {m20, m12, c[2]}, {m01, m12, m20}}};
  for (int i = 0; i < 4; ++i) {
    if (i == corner_local)
      add_graded(p, area, kids[static_cast<std::size_t>(i)], 0.25 * frac, depth - 1, corner_local, out);
    else
      add_rule(p, area, kids[static_cast<std::size_t>(i)], 0.25 * frac, out);
  }
}

double distance_to_triangle(const std::array<Point, 3>& p, Point x) {
  // inside?
  const double a = cross(p[1] - p[0], x - p[0]), b = cross(p[2] - p[1], x - p[1]), c = cross(p[0] - p[2], x - p[2]);
  if (a >= 0 && b >= 0 && c >= 0) return 0.0;
  double d = INFINITY;
  for (int i = 0; i < 3; ++i) {
    const Point s = p[static_cast<std::size_t>(i)], e = p[static_cast<std::size_t>((i + 1) % 3)];
    const Point se = e - s;
    const double t = std::clamp(dot(x - s, se) / dot(se, se), 0.0, 1.0);
    d = std::min(d, norm(x - (s + t * se)));
  }
  return d;
}

}  // namespace

ElementQuadrature::ElementQuadrature(const TriangleMesh& mesh, std::optional<Point> singular_point)
    : singular_(singular_point) {
  const std::size_t nt = mesh.num_triangles();
  offsets_.reserve(nt + 1);
  points_.reserve(nt * 7);
  const std::array<Bary, 3> ref{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (std::size_t t = 0; t < nt; ++t) {
    offsets_.push_back(points_.size());
    const auto p = mesh.triangle_points(static_cast<int>(t));
    const double area = mesh.area(static_cast<int>(t));
    if (!singular_) {
      add_rule(p, area, ref, 1.0, points_);
      continue;
    }
    int local = -1;
    for (int i = 0; i < 3; ++i)
      if (norm(p[static_cast<std::size_t>(i)] - *singular_) == 0.0) local = i;
    if (local >= 0) {
      add_graded(p, area, ref, 1.0, kGradedDepth, local, points_);
    } else if (distance_to_triangle(p, *singular_) < mesh.h()) {
      add_graded(p, area, ref, 1.0, 1, -1, points_);
    } else {
      add_rule(p, area, ref, 1.0, points_);
    }
  }
  offsets_.push_back(points_.size());
}

}  // namespace axm
