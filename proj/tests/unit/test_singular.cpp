#include <cmath>
#include <random>

#include "axm/error.hpp"
#include "axm/singular.hpp"
#include "axm/special.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace axm;

namespace {

CornerDescriptor simple_corner() {
  CornerDescriptor c;
  c.vertex = 0;
  c.position = {1.0, 1.0};
  c.interior_angle = 1.5 * kPi;
  c.alpha = 2.0 / 3.0;
  c.phi0 = 0.0;
  c.a = 1.0;
  return c;
}

/// Central differences of a pointwise field, pushed through the mode-k operator formulas.
struct FdOps {
  Vec3c curl;
  cplx div;
};

FdOps fd_ops(const std::function<Vec3c(Point)>& f, int k, Point p, double step = 1e-6) {
  const Vec3c u = f(p);
  const Vec3c ur = cplx(1.0 / (2 * step)) * (f({p.r + step, p.z}) - f({p.r - step, p.z}));
  const Vec3c uz = cplx(1.0 / (2 * step)) * (f({p.r, p.z + step}) - f({p.r, p.z - step}));
  const cplx ik = kI * static_cast<double>(k);
  const double r = p.r;
  FdOps o;
  o.curl = {ik * u[2] / r - uz[1], uz[0] - ur[2], ur[1] + u[1] / r - ik * u[0] / r};
  o.div = u[0] / r + ur[0] + ik * u[1] / r + uz[2];
  return o;
}

}  // namespace

TEST_CASE("principal parts at reference points") {
  const CornerDescriptor c = simple_corner();
  const Point p{1.0 + 1.0, 1.0};  // rho = 1, phi = 0, r = 2
  CornerDescriptor unit = c;
  unit.a = 2.0;  // r / a = 1
  const Vec3c se = eval_principal(PrincipalPart::edge(Space::X, unit), p);
  CHECK(std::abs(se[0]) < 1e-15);
  CHECK(std::abs(se[2] + 2.0 / 3.0) < 1e-15);
  const Vec3c s = eval_principal(PrincipalPart::edge(Space::Y, unit), p);
  CHECK(std::abs(s[0] + 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(s[2]) < 1e-15);

  CornerDescriptor a1 = c;
  a1.a = 1.0;
  CHECK(std::abs(eval_principal_curl_div(PrincipalPart::edge(Space::X, a1), 1, {2.0, 1.0}).div) < 1e-15);
  CHECK(std::abs(eval_principal_curl_div(PrincipalPart::edge(Space::Y, a1), 1, {2.0, 1.0}).div + 4.0 / 3.0) < 1e-14);
  CHECK_THROWS_AS(eval_principal(PrincipalPart::edge(Space::X, c), c.position), InvalidArgument);
}

TEST_CASE("conical principal part with nu = 1 reduces to (cos 2phi, 0, sin 2phi)") {
  PrincipalPart pp;
  pp.kind = PrincipalKind::Conical;
  pp.cone = {{0.0, 0.0}, 2.5};
  pp.nu = 1.0;
  for (double phi : {0.3, 1.0, 2.0}) {
    const Vec3c v = eval_principal(pp, {2.0 * std::sin(phi), 2.0 * std::cos(phi)});
    CHECK(std::abs(v[0] - std::cos(2 * phi)) < 1e-12);
    CHECK(std::abs(v[2] - std::sin(2 * phi)) < 1e-12);
  }
  CHECK_THROWS_AS(eval_principal_curl_div(pp, 0, {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("analytic curl and div of the principal parts match finite differences") {
  const auto dom = gen_lshape(1.0, 1.0, 2.0, 0.0, 2.0, 0.25);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Space s : {Space::X, Space::Y}) {
    const PrincipalPart pp = PrincipalPart::edge(s, dom.corner);
    const auto f = [&pp](Point p) { return eval_principal(pp, p); };
    int checked = 0;
    while (checked < 100) {
      const Point p{0.05 + 1.9 * u(rng), 0.05 + 1.9 * u(rng)};
      if (p.r > 1.0 && p.z > 1.0) continue;
      if (norm(p - dom.corner.position) < 0.05) continue;
      const int k = static_cast<int>(checked % 5) - 2;
      const CurlDiv cd = eval_principal_curl_div(pp, k, p);
      const FdOps fd = fd_ops(f, k, p);
      const double scale = std::sqrt(norm2(cd.curl) + std::norm(cd.div));
      CHECK(std::sqrt(norm2(cd.curl - fd.curl)) <= 1e-5 * scale);
      CHECK(std::abs(cd.div - fd.div) <= 1e-5 * scale);
      ++checked;
    }
  }
}

TEST_CASE("principal part blows up like rho^(alpha - 1)") {
  const auto dom = gen_lshape(1.0, 1.0, 2.0, 0.0, 2.0, 0.25);
  for (Space s : {Space::X, Space::Y}) {
    const PrincipalPart pp = PrincipalPart::edge(s, dom.corner);
    const double ang = dom.corner.phi0 + 0.7;
    const double rho = 1e-3 * 2.0;
    const auto at = [&](double d) {
      return std::sqrt(norm2(eval_principal(pp, dom.corner.position + d * Point{std::cos(ang), std::sin(ang)})));
    };
    CHECK(std::abs(at(rho / 2) / at(rho) / std::pow(2.0, 1.0 / 3.0) - 1.0) < 0.01);
  }
}

TEST_CASE("singular basis satisfies the homogeneous formulation") {
  const auto dom = gen_lshape(1.0, 1.0, 2.0, 0.0, 2.0, 0.1);
  const Discretization disc(dom.mesh, dom.corner.position);
  std::mt19937 rng(23);
  for (Space s : {Space::X, Space::Y}) {
    for (int k = -2; k <= 2; ++k) {
      const SingularBasis b = compute_basis(disc, dom.corner, k, s);
      const ConstraintSet cs = build_constraints(dom.mesh, k, s);
      const auto ev = basis_evaluator(disc, b);
      const double bnorm = std::sqrt(form_a(disc, ev, ev).real());
      double worst = 0.0;
      for (int trial = 0; trial < 10; ++trial) {
        const ModeField v = test::random_constrained(cs, rng);
        const double vnorm = std::sqrt(form_a(disc, v, v, k).real());
        worst = std::max(worst, std::abs(form_a(disc, ev, p1_evaluator(disc, v, k))) / (bnorm * vnorm));
      }
      CHECK(worst <= 1e-6);
      if (k == 0)
        for (const auto& v : b.regular.values)
          for (const auto& c : v) CHECK(std::abs(c.imag()) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(compute_basis(disc, dom.corner, 3, Space::Y), InvalidArgument);
}

TEST_CASE("singular dimension bookkeeping") {
  const auto dom = gen_lshape(1.0, 1.0, 2.0, 0.0, 2.0, 0.25);
  const std::vector<CornerDescriptor> corners{dom.corner};
  const std::vector<ConicalDescriptor> cones{{{0.0, 0.0}, 2.5}};
  for (int k = -3; k <= 3; ++k) {
    for (Space s : {Space::X, Space::Y}) {
      CHECK(singular_dimension(corners, {}, k, s) == 1);
      CHECK(singular_dimension(corners, cones, k, s) == (s == Space::X && k == 0 ? 2 : 1));
    }
  }
}
