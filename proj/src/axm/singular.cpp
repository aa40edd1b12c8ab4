#include "axm/singular.hpp"

#include <cmath>
#include <cstdlib>

#include "axm/error.hpp"
#include "axm/special.hpp"

namespace axm {

PrincipalPart PrincipalPart::edge(Space space, const CornerDescriptor& corner) {
  if (!(corner.alpha > 0.5 && corner.alpha < 1.0)) throw InvalidArgument("principal part needs 1/2 < alpha < 1");
  if (!(corner.a > 0.0)) throw InvalidArgument("principal part needs a > 0");
  PrincipalPart pp;
  pp.kind = space == Space::X ? PrincipalKind::EdgeElectric : PrincipalKind::EdgeMagnetic;
  pp.corner = corner;
  return pp;
}

PrincipalPart PrincipalPart::conical(const ConicalDescriptor& cone, double nu) {
  if (!(nu > 0.0 && nu < 0.5)) throw InvalidArgument("conical principal part needs 0 < nu < 1/2");
  if (!(cone.aperture > 0.0 && cone.aperture < kPi)) throw InvalidArgument("cone aperture must lie in (0, pi)");
  PrincipalPart pp;
  pp.kind = PrincipalKind::Conical;
  pp.cone = cone;
  pp.nu = nu;
  return pp;
}

namespace {

struct EdgeFrame {
  double scale;  // alpha rho^(alpha-1)
  double theta;  // (alpha - 1) phi - phi0
};

EdgeFrame edge_frame(const CornerDescriptor& c, Point p) {
  const PolarCoords pc = corner_polar(c, p);
  if (!(pc.rho > 0.0)) throw InvalidArgument("principal part evaluated at the corner");
  return {c.alpha * std::pow(pc.rho, c.alpha - 1.0), (c.alpha - 1.0) * pc.phi - c.phi0};
}

}  // namespace

Vec3c eval_principal(const PrincipalPart& pp, Point p) {
  switch (pp.kind) {
    case PrincipalKind::EdgeElectric: {
      const EdgeFrame f = edge_frame(pp.corner, p);
      const double c = -(p.r / pp.corner.a) * f.scale;
      return {c * std::sin(f.theta), 0.0, c * std::cos(f.theta)};
    }
    case PrincipalKind::EdgeMagnetic: {
      const EdgeFrame f = edge_frame(pp.corner, p);
      const double c = -(p.r / pp.corner.a) * f.scale;
      return {c * std::cos(f.theta), 0.0, -c * std::sin(f.theta)};
    }
    case PrincipalKind::Conical: {
      const Point d = p - pp.cone.vertex;
      const double rho = norm(d);
      if (!(rho > 0.0)) throw InvalidArgument("principal part evaluated at the cone vertex");
      const double phi = std::atan2(d.r, d.z);
      const double x = std::cos(phi);
      const double pn = special::legendre_p(pp.nu, x);
      const double p1 = special::legendre_p1(pp.nu, x);
      const double c = pp.nu * std::pow(rho, pp.nu - 1.0);
      const double s = std::sin(phi);
      return {c * (pn * x - p1 * s), 0.0, c * (pn * s + p1 * x)};
    }
  }
  throw InvalidArgument("unknown principal part kind");
}

CurlDiv eval_principal_curl_div(const PrincipalPart& pp, int k, Point p) {
  if (pp.kind == PrincipalKind::Conical)
    throw InvalidArgument("curl and div of the conical principal part are not available");
  const EdgeFrame f = edge_frame(pp.corner, p);
  const double m = f.scale / pp.corner.a;
  const double s = std::sin(f.theta);
  const double c = std::cos(f.theta);
  const cplx ik = kI * static_cast<double>(k);
  if (pp.kind == PrincipalKind::EdgeElectric) return {{-ik * c * m, c * m, ik * s * m}, -2.0 * m * s};
  return {{ik * s * m, -s * m, ik * c * m}, -2.0 * m * c};
}

FieldEvaluator principal_evaluator(const PrincipalPart& pp, int k) {
  return [pp, k](int, const QuadPoint& q) {
    const CurlDiv cd = eval_principal_curl_div(pp, k, q.p);
    return PointValue{eval_principal(pp, q.p), cd.curl, cd.div};
  };
}

SingularBasis compute_basis(const Discretization& disc, const CornerDescriptor& corner, int k, Space space,
                            const BasisOptions& opts) {
  if (std::abs(k) > 2 && !opts.allow_any_k)
    throw InvalidArgument("singular bases are computed for |k| <= 2 only; higher modes reuse |k| = 2");
  const auto& mesh = disc.mesh();
  SingularBasis basis;
  basis.k = k;
  basis.space = space;
  basis.principal = PrincipalPart::edge(space, corner);

  const ConstraintSet cs = build_constraints(mesh, k, space);
  const AssembledSystem sys = assemble_a_k(disc, cs);
  const PrincipalPart pp = basis.principal;
  const ModeField lift = lift_boundary(mesh, cs, [&pp](Point p) {
    if (norm(p - pp.corner.position) == 0.0) {
      const double nan = std::nan("");
      return Vec3c{nan, nan, nan};
    }
    return cplx(-1.0) * eval_principal(pp, p);
  });

  // -a_k(S + lift, Psi_m)
  auto rhs = apply_form(disc, cs, add(principal_evaluator(pp, k), p1_evaluator(disc, lift, k)));
  for (auto& v : rhs) v = -v;

  const CgResult cg = solve_hpd(sys.matrix, rhs, opts.cg);
  basis.regular = cs.expand(cg.x);
  basis.regular.k = k;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) basis.regular.values[v] = basis.regular.values[v] + lift.values[v];
  basis.diagnostics = {cg.iterations, cg.relative_residual, cs.num_free()};
  return basis;
}

FieldEvaluator basis_evaluator(const Discretization& disc, const SingularBasis& basis, int k) {
  return add(p1_evaluator(disc, basis.regular, k), principal_evaluator(basis.principal, k));
}

FieldEvaluator basis_evaluator(const Discretization& disc, const SingularBasis& basis) {
  return basis_evaluator(disc, basis, basis.k);
}

ModeField basis_nodal(const TriangleMesh& mesh, const SingularBasis& basis) {
  ModeField out = basis.regular;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (static_cast<int>(v) == basis.principal.corner.vertex) continue;
    out.values[v] = out.values[v] + eval_principal(basis.principal, mesh.vertex(static_cast<int>(v)));
  }
  return out;
}

int singular_dimension(std::span<const CornerDescriptor> corners, std::span<const ConicalDescriptor> cones, int k,
                       Space space) {
  int n = 0;
  for (const auto& c : corners)
    if (c.reentrant()) ++n;
  if (space == Space::X && k == 0)
    for (const auto& cone : cones)
      if (special::find_nu(cone.aperture)) ++n;
  return n;
}

}  // namespace axm
