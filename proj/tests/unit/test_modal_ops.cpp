#include <cmath>
#include <random>

#include "axm/error.hpp"
#include "axm/modal_ops.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace axm;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

LShapeDomain lshape(double h) { return gen_lshape(1.0, 1.0, 2.0, 0.0, 2.0, h); }

}  // namespace

TEST_CASE("pointwise mode operators on linear fields") {
  const TriangleMesh mesh = gen_rectangle(0.0, 1.0, 0.0, 1.0, 0.25);
  ModeField f(3, mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) f.values[v] = {mesh.vertex(static_cast<int>(v)).r, 0.0, 0.0};
  for (int k : {-2, 0, 3}) CHECK(std::abs(eval_div_k(mesh, f, k, {0.3, 0.6}) - 2.0) < 1e-12);

  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) f.values[v] = {0.0, 0.0, mesh.vertex(static_cast<int>(v)).r};
  for (int k : {-1, 0, 2}) {
    const Vec3c c = eval_curl_k(mesh, f, k, {0.45, 0.2});
    CHECK(std::abs(c[0] - kI * static_cast<double>(k)) < 1e-12);
    CHECK(std::abs(c[1] + 1.0) < 1e-12);
    CHECK(std::abs(c[2]) < 1e-12);
  }

  std::vector<cplx> w(mesh.num_vertices());
  for (std::size_t v = 0; v < w.size(); ++v) w[v] = mesh.vertex(static_cast<int>(v)).z;
  const Point p{0.7, 0.35};
  const Vec3c g = eval_grad_k(mesh, w, 2, p);
  CHECK(std::abs(g[0]) < 1e-12);
  CHECK(std::abs(g[1] - kI * 2.0 * p.z / p.r) < 1e-12);
  CHECK(std::abs(g[2] - 1.0) < 1e-12);
  CHECK_THROWS_AS(eval_div_k(mesh, f, 1, {0.0, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(eval_div_k(mesh, f, 1, {1.5, 0.5}), InvalidArgument);
}

TEST_CASE("quadratic form of (0,0,r) without walls") {
  const TriangleMesh mesh = gen_rectangle(0.5, 1.5, 0.0, 1.0, 0.25);
  const Discretization disc(mesh);
  ModeField f(0, mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) f.values[v] = {0.0, 0.0, mesh.vertex(static_cast<int>(v)).r};
  const double int_r = 0.5 * (1.5 * 1.5 - 0.5 * 0.5);
  for (int k : {0, 1, -2, 3}) {
    f.k = k;
    CHECK(rel(form_a(disc, f, f, k), (k * k + 1.0) * int_r) < 1e-12);
  }
}

TEST_CASE("form_over_r2 and form_C") {
  const TriangleMesh mesh = gen_rectangle(0.0, 1.0, 0.0, 1.0, 0.25);
  const Discretization disc(mesh);
  ModeField u(0, mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) u.values[v] = {mesh.vertex(static_cast<int>(v)).r, 0.0, 0.0};
  bool flag = true;
  CHECK(rel(form_over_r2(disc, u, u, &flag), 0.5) < 1e-12);
  CHECK_FALSE(flag);

  std::mt19937 rng(7);
  const ModeField w = test::random_constrained(build_constraints(mesh, 2, Space::X), rng);
  CHECK(std::abs(form_C(disc, w, w).real()) < 1e-12 * std::abs(form_C(disc, w, w)));
  CHECK(std::abs(form_B(mesh, w, w)) < 1e-14);
  const ModeField any = test::random_field(mesh.num_vertices(), 1, rng);
  form_C(disc, any, any, &flag);
  CHECK(flag);
}

TEST_CASE("direct assembly matches the meridian/azimuthal splitting") {
  const auto dom = lshape(0.1);
  const Discretization disc(dom.mesh, dom.corner.position);
  std::mt19937 rng(11);
  for (int k = -2; k <= 5; ++k) {
    for (int trial = 0; trial < 3; ++trial) {
      const ModeField u = test::random_field(dom.mesh.num_vertices(), k, rng);
      const ModeField v = test::random_field(dom.mesh.num_vertices(), k, rng);
      const cplx direct = form_a(disc, u, v, k);
      CHECK(rel(a_k_via_decomposition(disc, u, v, k), direct) < 1e-10);
    }
    for (Space s : {Space::X, Space::Y}) {
      const ConstraintSet cs = build_constraints(dom.mesh, k, s);
      const ModeField u = test::random_constrained(cs, rng);
      const ModeField v = test::random_constrained(cs, rng);
      const Decomposition d = decompose(disc, u, v);
      CHECK(std::abs(d.b_wall) < 1e-12 * std::abs(form_a(disc, u, v, k)));
      CHECK(rel(d.total(k), form_a(disc, u, v, k)) < 1e-10);
    }
  }
}

TEST_CASE("mode shift from k = 2") {
  const auto dom = lshape(0.1);
  const Discretization disc(dom.mesh, dom.corner.position);
  std::mt19937 rng(5);
  for (Space s : {Space::X, Space::Y}) {
    const ConstraintSet cs2 = build_constraints(dom.mesh, 2, s);
    const ModeField u = test::random_constrained(cs2, rng);
    const ModeField v = test::random_constrained(cs2, rng);
    const cplx a2 = form_a(disc, u, v, 2);
    const cplx r2 = form_over_r2(disc, u, v);
    const cplx c = form_C(disc, u, v);
    for (int k = -2; k <= 5; ++k) CHECK(rel(shift_from_mode2(a2, r2, c, k), form_a(disc, u, v, k)) < 1e-10);
  }
}

TEST_CASE("assembled matrix reproduces the form") {
  const auto dom = lshape(0.25);
  const Discretization disc(dom.mesh, dom.corner.position);
  std::mt19937 rng(3);
  for (int k : {0, 1, -1, 2}) {
    for (Space s : {Space::X, Space::Y}) {
      const ConstraintSet cs = build_constraints(dom.mesh, k, s);
      const AssembledSystem sys = assemble_a_k(disc, cs);
      CHECK(sys.matrix.hermitian_defect() < 1e-12);
      if (k == 0)
        for (const auto& v : sys.matrix.values()) CHECK(std::abs(v.imag()) <= 1e-14);
      std::vector<cplx> x(cs.num_free()), y(cs.num_free());
      std::uniform_real_distribution<double> d(-1, 1);
      for (auto& e : x) e = {d(rng), d(rng)};
      for (auto& e : y) e = {d(rng), d(rng)};
      const auto ax = sys.matrix.multiply(x);
      const ModeField fx = cs.expand(x), fy = cs.expand(y);
      CHECK(rel(inner(y, ax), form_a(disc, fx, fy, k)) < 1e-12);

      // load of (curl w, div w) equals A w
      const auto load = apply_form(disc, cs, p1_evaluator(disc, fx, k));
      double err = 0.0;
      for (std::size_t i = 0; i < load.size(); ++i) err = std::max(err, std::abs(load[i] - ax[i]));
      CHECK(err <= 1e-10 * norm(ax));
    }
  }
}

TEST_CASE("curl of a gradient vanishes") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-1, 1);
  // P1 scalar w; grad_k w is not P1, so check the identity through the jet algebra
  for (int k : {0, 1, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const cplx w{d(rng), d(rng)}, wr{d(rng), d(rng)}, wz{d(rng), d(rng)};
      const double r = 0.1 + 0.8 * std::abs(d(rng));
      // grad_k w = (wr, ik w / r, wz); its jet: d/dr of the theta part = ik (wr / r - w / r^2)
      Jet j;
      j.r = r;
      j.u = grad_k(w, wr, wz, r, k);
      const cplx ik = kI * static_cast<double>(k);
      j.dr = {0.0, ik * (wr / r - w / (r * r)), 0.0};
      j.dz = {0.0, ik * wz / r, 0.0};
      const Vec3c c = curl_k(j, k);
      CHECK(std::sqrt(norm2(c)) < 1e-12);
    }
  }
}
