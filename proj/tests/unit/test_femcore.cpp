#include <cmath>
#include <random>

#include "axm/error.hpp"
#include "axm/femcore.hpp"
#include "axm/quadrature.hpp"
#include "axm/singular.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace axm;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

/// Exact integral over a triangle of a product of linear functions, each given by its
/// vertex values, via the simplex moments of the barycentric coordinates.
double exact_product_integral(const std::vector<std::array<double, 3>>& factors, double area) {
  const std::size_t n = factors.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= 3;
  double sum = 0.0;
  for (std::size_t code = 0; code < combos; ++code) {
    int cnt[3] = {0, 0, 0};
    double coef = 1.0;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      ++cnt[c % 3];
      coef *= factors[i][c % 3];
    }
    sum += coef * 2.0 * area * factorial(cnt[0]) * factorial(cnt[1]) * factorial(cnt[2]) /
           factorial(cnt[0] + cnt[1] + cnt[2] + 2);
  }
  return sum;
}

bool is_wall_vertex(const TriangleMesh& m, int v) {
  for (const auto& e : m.boundary())
    if (e.tag == BoundaryTag::Wall && (e.v[0] == v || e.v[1] == v)) return true;
  return false;
}

}  // namespace

TEST_CASE("P1 interpolation") {
  const auto m = gen_lshape(1, 1, 2, 0, 2, 0.25).mesh;
  std::mt19937 rng(5);
  ModeField ones(0, m.num_vertices()), lin(0, m.num_vertices());
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    ones.values[v] = {1.0, 0.0, 0.0};
    lin.values[v] = {m.vertex(static_cast<int>(v)).r, 0.0, 0.0};
  }
  std::uniform_real_distribution<double> u(0.0, 2.0);
  int inside = 0;
  for (int i = 0; i < 200; ++i) {
    const Point p{u(rng), u(rng)};
    if (p.r > 1.0 && p.z > 1.0) {
      CHECK_THROWS_AS(interpolate(m, ones, p), InvalidArgument);
      continue;
    }
    ++inside;
    const Vec3c a = interpolate(m, ones, p);
    CHECK(std::abs(a[0] - 1.0) < 1e-14);
    CHECK(std::abs(a[1]) == 0.0);
    CHECK(std::abs(interpolate(m, lin, p)[0] - p.r) < 1e-14);
  }
  CHECK(inside > 100);
  const ModeField rnd = test::random_field(m.num_vertices(), 1, rng);
  for (int v : {0, 7, static_cast<int>(m.num_vertices()) - 1}) {
    const Vec3c a = interpolate(m, rnd, m.vertex(v));
    for (int c = 0; c < 3; ++c) CHECK(std::abs(a[c] - rnd.values[static_cast<std::size_t>(v)][c]) < 1e-14);
  }
}

TEST_CASE("quadrature exactness") {
  const auto& rule = triangle_rule();
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-15);

  const std::array<Point, 3> tri{{{0.3, 0.1}, {1.2, 0.4}, {0.7, 1.1}}};
  const TriangleMesh one({tri[0], tri[1], tri[2]}, {{0, 1, 2}}, {{{0, 1}, BoundaryTag::Wall}, {{1, 2}, BoundaryTag::Wall}, {{2, 0}, BoundaryTag::Wall}}, 1.0);
  const ElementQuadrature q(one);
  const std::array<double, 3> rv{tri[0].r, tri[1].r, tri[2].r}, zv{tri[0].z, tri[1].z, tri[2].z};
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      double num = 0.0;
      for (const auto& p : q.points(0)) num += p.weight * p.p.r * std::pow(p.p.r, a) * std::pow(p.p.z, b);
      std::vector<std::array<double, 3>> f(1, rv);
      for (int i = 0; i < a; ++i) f.push_back(rv);
      for (int i = 0; i < b; ++i) f.push_back(zv);
      const double ex = exact_product_integral(f, one.area(0));
      CHECK(std::abs(num - ex) <= 1e-13 * std::abs(ex));
    }

  // triangle touching the axis: the integral of r
  const auto rect = gen_rectangle(0, 1, 0, 1, 0.25);
  const ElementQuadrature qr(rect);
  for (std::size_t t = 0; t < rect.num_triangles(); ++t) {
    const auto p = rect.triangle_points(static_cast<int>(t));
    if (p[0].r != 0.0 && p[1].r != 0.0 && p[2].r != 0.0) continue;
    double num = 0.0;
    for (const auto& qp : qr.points(static_cast<int>(t))) {
      CHECK(qp.p.r > 0.0);
      num += qp.weight * qp.p.r;
    }
    const double ex = rect.area(static_cast<int>(t)) * (p[0].r + p[1].r + p[2].r) / 3.0;
    CHECK(std::abs(num - ex) <= 1e-13 * ex);
  }
}

TEST_CASE("axis conditions by mode") {
  const auto m = gen_rectangle(0, 1, 0, 1, 0.25);
  // interior axis vertex (not on a wall)
  int axis_v = -1;
  for (std::size_t v = 0; v < m.num_vertices(); ++v)
    if (m.vertex(static_cast<int>(v)).r == 0.0 && !is_wall_vertex(m, static_cast<int>(v))) axis_v = static_cast<int>(v);
  REQUIRE(axis_v >= 0);
  for (Space s : {Space::X, Space::Y}) {
    const auto c2 = build_constraints(m, 2, s);
    for (int c = 0; c < 3; ++c) CHECK(c2.dof(dof_index(axis_v, c)).kind == DofKind::Fixed);
    const auto c0 = build_constraints(m, 0, s);
    CHECK(c0.dof(dof_index(axis_v, kR)).kind == DofKind::Fixed);
    CHECK(c0.dof(dof_index(axis_v, kTheta)).kind == DofKind::Fixed);
    CHECK(c0.dof(dof_index(axis_v, kZ)).kind == DofKind::Free);
    for (int k : {1, -1}) {
      const auto c1 = build_constraints(m, k, s);
      CHECK(c1.dof(dof_index(axis_v, kZ)).kind == DofKind::Fixed);
      CHECK(c1.dof(dof_index(axis_v, kR)).kind == DofKind::Free);
      const auto& t = c1.dof(dof_index(axis_v, kTheta));
      CHECK(t.kind == DofKind::Tied);
      CHECK(t.master == dof_index(axis_v, kR));
      CHECK(t.coef == cplx(0.0, k));
      // e_x has mode +-1 coefficients (1/2, +-i/2, 0) up to normalization
      ModeField ex(k, m.num_vertices());
      ex.values[static_cast<std::size_t>(axis_v)] = {0.5, cplx(0.0, 0.5 * k), 0.0};
      CHECK(c1.violation(ex) < 1e-15);
    }
  }
}

TEST_CASE("wall conditions by space") {
  const auto m = gen_rectangle(0, 1, 0, 1, 0.25);
  int vertical = -1, horizontal = -1;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    const Point p = m.vertex(static_cast<int>(v));
    if (p.r == 1.0 && p.z == 0.5) vertical = static_cast<int>(v);
    if (p.r == 0.5 && p.z == 1.0) horizontal = static_cast<int>(v);
  }
  REQUIRE(vertical >= 0);
  REQUIRE(horizontal >= 0);
  const auto y = build_constraints(m, 0, Space::Y);
  CHECK(y.dof(dof_index(vertical, kR)).kind == DofKind::Fixed);
  CHECK(y.dof(dof_index(vertical, kTheta)).kind == DofKind::Free);
  CHECK(y.dof(dof_index(vertical, kZ)).kind == DofKind::Free);
  CHECK(y.dof(dof_index(horizontal, kZ)).kind == DofKind::Fixed);
  CHECK(y.dof(dof_index(horizontal, kR)).kind == DofKind::Free);
  const auto x = build_constraints(m, 0, Space::X);
  CHECK(x.dof(dof_index(vertical, kZ)).kind == DofKind::Fixed);
  CHECK(x.dof(dof_index(vertical, kTheta)).kind == DofKind::Fixed);
  CHECK(x.dof(dof_index(vertical, kR)).kind == DofKind::Free);
  CHECK(x.dof(dof_index(horizontal, kR)).kind == DofKind::Fixed);
  CHECK(x.dof(dof_index(horizontal, kZ)).kind == DofKind::Free);

  // the reentrant corner carries both edge conditions
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.25);
  const auto cx = build_constraints(d.mesh, 3, Space::X);
  const auto cy = build_constraints(d.mesh, 3, Space::Y);
  for (int c = 0; c < 3; ++c) CHECK(cx.dof(dof_index(d.corner.vertex, c)).kind == DofKind::Fixed);
  CHECK(cy.dof(dof_index(d.corner.vertex, kR)).kind == DofKind::Fixed);
  CHECK(cy.dof(dof_index(d.corner.vertex, kZ)).kind == DofKind::Fixed);
  CHECK(cy.dof(dof_index(d.corner.vertex, kTheta)).kind == DofKind::Free);

  // a slanted wall is rejected
  const TriangleMesh slanted({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}},
                             {{{0, 1}, BoundaryTag::Wall}, {{1, 2}, BoundaryTag::Wall}, {{2, 0}, BoundaryTag::Axis}}, 1.0);
  CHECK_THROWS_AS(build_constraints(slanted, 0, Space::X), InvalidArgument);
  CHECK_THROWS_AS(build_constraints(slanted, 0, Space::Y), InvalidArgument);
}

TEST_CASE("constraint application") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.25);
  std::mt19937 rng(11);
  for (int k = -3; k <= 3; ++k)
    for (Space s : {Space::X, Space::Y}) {
      const auto cs = build_constraints(d.mesh, k, s);
      ModeField f = test::random_field(d.mesh.num_vertices(), k, rng);
      CHECK(cs.violation(f) > 0.0);
      cs.apply(f);
      CHECK(cs.violation(f) == 0.0);
      ModeField g = f;
      cs.apply(g);
      CHECK(g.values == f.values);
      const auto x = cs.restrict_to_free(f);
      CHECK(x.size() == cs.num_free());
      CHECK(cs.expand(x).values == f.values);
    }
}

TEST_CASE("boundary lifting") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.25);
  const auto& m = d.mesh;
  const auto cs = build_constraints(m, 1, Space::X);
  const ModeField zero = lift_boundary(m, cs, [](Point) { return Vec3c{}; });
  for (const auto& v : zero.values) CHECK(norm2(v) == 0.0);

  const auto pp = PrincipalPart::edge(Space::X, d.corner);
  const ModeField lift = lift_boundary(m, cs, [&](Point p) {
    if (p == d.corner.position) return Vec3c{cplx(NAN), cplx(NAN), cplx(NAN)};
    return cplx(-1.0) * eval_principal(pp, p);
  });
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    const int iv = static_cast<int>(v);
    if (!is_wall_vertex(m, iv)) {
      CHECK(norm2(lift.values[v]) == 0.0);
      continue;
    }
    if (iv == d.corner.vertex) continue;
    const Vec3c s = eval_principal(pp, m.vertex(iv));
    for (int c = 0; c < 3; ++c) {
      const auto& dc = cs.dof(dof_index(iv, c));
      if (dc.source == FixSource::Wall)
        CHECK(std::abs(lift.values[v][c] + s[c]) < 1e-14);
      else
        CHECK(lift.values[v][c] == 0.0);
    }
  }
  // traces of the principal part vanish along the incident walls, so the corner limit is small
  CHECK(std::sqrt(norm2(lift.values[static_cast<std::size_t>(d.corner.vertex)])) < 1e-6);

  // a trace satisfying the homogeneous conditions lifts to zero
  const auto cy = build_constraints(m, 0, Space::Y);
  const ModeField tangential = lift_boundary(m, cy, [](Point) { return Vec3c{0.0, 5.0, 0.0}; });
  for (const auto& v : tangential.values) CHECK(norm2(v) == 0.0);

  CHECK_THROWS_AS(lift_boundary(m, cs, [](Point) { return Vec3c{cplx(NAN), 0.0, 0.0}; }), InvalidArgument);
}
