#include "axm/modal_ops.hpp"

#include <algorithm>
#include <cmath>

#include "axm/error.hpp"

namespace axm {

Vec3c curl_k(const Jet& j, int k) {
  const cplx ik = kI * static_cast<double>(k);
  return {ik * j.u[kZ] / j.r - j.dz[kTheta], j.dz[kR] - j.dr[kZ],
          j.dr[kTheta] + j.u[kTheta] / j.r - ik * j.u[kR] / j.r};
}

cplx div_k(const Jet& j, int k) {
  const cplx ik = kI * static_cast<double>(k);
  return j.u[kR] / j.r + j.dr[kR] + ik * j.u[kTheta] / j.r + j.dz[kZ];
}

Vec3c grad_k(cplx w, cplx dw_dr, cplx dw_dz, double r, int k) {
  return {dw_dr, kI * static_cast<double>(k) * w / r, dw_dz};
}

Discretization::Discretization(TriangleMesh mesh, std::optional<Point> singular_point)
    : mesh_(std::move(mesh)), quad_(mesh_, singular_point) {
  grads_.reserve(mesh_.num_triangles());
  for (std::size_t t = 0; t < mesh_.num_triangles(); ++t)
    grads_.push_back(barycentric_gradients(mesh_.triangle_points(static_cast<int>(t))));
}

Jet Discretization::jet(const ModeField& field, int t, const std::array<double, 3>& bary) const {
  const auto& tri = mesh_.triangles()[static_cast<std::size_t>(t)];
  const auto& g = grads_[static_cast<std::size_t>(t)];
  Jet j;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& val = field.values[static_cast<std::size_t>(tri[a])];
    j.u = j.u + cplx(bary[a]) * val;
    j.dr = j.dr + cplx(g[a].r) * val;
    j.dz = j.dz + cplx(g[a].z) * val;
    j.r += bary[a] * mesh_.vertex(tri[a]).r;
  }
  return j;
}

namespace {

Jet locate_jet(const TriangleMesh& mesh, const ModeField& field, Point p) {
  if (!(p.r > 0.0)) throw InvalidArgument("mode operators are undefined at r <= 0");
  if (field.values.size() != mesh.num_vertices()) throw InvalidArgument("field size does not match mesh");
  const auto loc = locate(mesh, p);
  if (!loc) throw InvalidArgument("evaluation point outside the mesh");
  const auto& tri = mesh.triangles()[static_cast<std::size_t>(loc->triangle)];
  const auto g = barycentric_gradients(mesh.triangle_points(loc->triangle));
  Jet j;
  j.r = p.r;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& val = field.values[static_cast<std::size_t>(tri[a])];
    j.u = j.u + cplx(loc->bary[a]) * val;
    j.dr = j.dr + cplx(g[a].r) * val;
    j.dz = j.dz + cplx(g[a].z) * val;
  }
  return j;
}

bool nonzero_on_axis(const TriangleMesh& mesh, const ModeField& f) {
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
    if (mesh.vertex(static_cast<int>(v)).r == 0.0 && norm2(f.values[v]) != 0.0) return true;
  return false;
}

/// Local basis lambda_a e_c, a = local vertex, c = component; index 3a + c.
struct LocalBasis {
  std::array<Vec3c, 9> curl;
  std::array<cplx, 9> div;
};

LocalBasis local_basis(const std::array<Point, 3>& g, const std::array<double, 3>& bary, double r, int k) {
  LocalBasis lb;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t c = 0; c < 3; ++c) {
      Jet j;
      j.r = r;
      j.u[c] = bary[a];
      j.dr[c] = g[a].r;
      j.dz[c] = g[a].z;
      lb.curl[3 * a + c] = curl_k(j, k);
      lb.div[3 * a + c] = div_k(j, k);
    }
  }
  return lb;
}

/// Free unknowns a global dof contributes to, with its coefficient.
struct Expansion {
  long index = -1;
  cplx coef{};
};

Expansion expansion(const ConstraintSet& cs, std::size_t d) {
  const auto& dc = cs.dof(d);
  switch (dc.kind) {
    case DofKind::Free:
      return {cs.free_index(d), 1.0};
    case DofKind::Tied:
      return {cs.free_index(dc.master), dc.coef};
    case DofKind::Fixed:
      break;
  }
  return {};
}

void check_mesh(const Discretization& disc, const ConstraintSet& cs) {
  if (cs.num_vertices() != disc.mesh().num_vertices()) throw InvalidArgument("constraint set does not match mesh");
}

}  // namespace

Vec3c eval_curl_k(const TriangleMesh& mesh, const ModeField& field, int k, Point p) {
  return curl_k(locate_jet(mesh, field, p), k);
}

cplx eval_div_k(const TriangleMesh& mesh, const ModeField& field, int k, Point p) {
  return div_k(locate_jet(mesh, field, p), k);
}

Vec3c eval_grad_k(const TriangleMesh& mesh, std::span<const cplx> scalar, int k, Point p) {
  if (scalar.size() != mesh.num_vertices()) throw InvalidArgument("scalar field size does not match mesh");
  ModeField f(k, mesh.num_vertices());
  for (std::size_t v = 0; v < scalar.size(); ++v) f.values[v][0] = scalar[v];
  const Jet j = locate_jet(mesh, f, p);
  return grad_k(j.u[0], j.dr[0], j.dz[0], j.r, k);
}

FieldEvaluator p1_evaluator(const Discretization& disc, const ModeField& field, int k) {
  if (field.values.size() != disc.mesh().num_vertices()) throw InvalidArgument("field size does not match mesh");
  return [&disc, field, k](int t, const QuadPoint& q) {
    Jet j = disc.jet(field, t, q.bary);
    j.r = q.p.r;
    return PointValue{j.u, curl_k(j, k), div_k(j, k)};
  };
}

FieldEvaluator add(FieldEvaluator a, FieldEvaluator b, cplx scale_b) {
  return [a = std::move(a), b = std::move(b), scale_b](int t, const QuadPoint& q) {
    const PointValue x = a(t, q);
    const PointValue y = b(t, q);
    return PointValue{x.value + scale_b * y.value, x.curl + scale_b * y.curl, x.div + scale_b * y.div};
  };
}

cplx form_a(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v) {
  return disc.integrate([&](int t, const QuadPoint& q) {
    const PointValue a = u(t, q);
    const PointValue b = v(t, q);
    return dotc(a.curl, b.curl) + a.div * std::conj(b.div);
  });
}

cplx form_a(const Discretization& disc, const ModeField& u, const ModeField& v, int k) {
  return form_a(disc, p1_evaluator(disc, u, k), p1_evaluator(disc, v, k));
}

cplx form_l2(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v) {
  return disc.integrate([&](int t, const QuadPoint& q) { return dotc(u(t, q).value, v(t, q).value); });
}

cplx form_over_r2(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v) {
  return disc.integrate([&](int t, const QuadPoint& q) {
    return dotc(u(t, q).value, v(t, q).value) / (q.p.r * q.p.r);
  });
}

cplx form_C(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v) {
  return disc.integrate([&](int t, const QuadPoint& q) {
    const Vec3c a = u(t, q).value;
    const Vec3c b = v(t, q).value;
    return 2.0 * (a[kTheta] * std::conj(b[kR]) - a[kR] * std::conj(b[kTheta])) / (q.p.r * q.p.r);
  });
}

cplx form_over_r2(const Discretization& disc, const ModeField& u, const ModeField& v, bool* axis_flag) {
  if (axis_flag) *axis_flag = nonzero_on_axis(disc.mesh(), u) || nonzero_on_axis(disc.mesh(), v);
  return form_over_r2(disc, p1_evaluator(disc, u, u.k), p1_evaluator(disc, v, v.k));
}

cplx form_C(const Discretization& disc, const ModeField& u, const ModeField& v, bool* axis_flag) {
  if (axis_flag) *axis_flag = nonzero_on_axis(disc.mesh(), u) || nonzero_on_axis(disc.mesh(), v);
  return form_C(disc, p1_evaluator(disc, u, u.k), p1_evaluator(disc, v, v.k));
}

namespace {

cplx boundary_form(const TriangleMesh& mesh, const ModeField& u, const ModeField& v, BoundaryTag tag) {
  if (u.values.size() != mesh.num_vertices() || v.values.size() != mesh.num_vertices())
    throw InvalidArgument("field size does not match mesh");
  const auto& rule = line_rule();
  cplx sum = 0.0;
  for (const auto& e : mesh.boundary()) {
    if (e.tag != tag) continue;
    const Point p0 = mesh.vertex(e.v[0]);
    const Point p1 = mesh.vertex(e.v[1]);
    const double len = norm(p1 - p0);
    const Point n = mesh.outward_normal(e);
    const auto& u0 = u.values[static_cast<std::size_t>(e.v[0])];
    const auto& u1 = u.values[static_cast<std::size_t>(e.v[1])];
    const auto& v0 = v.values[static_cast<std::size_t>(e.v[0])];
    const auto& v1 = v.values[static_cast<std::size_t>(e.v[1])];
    for (std::size_t i = 0; i < 2; ++i) {
      const double s = rule.t[i];
      const Vec3c a = cplx(1.0 - s) * u0 + cplx(s) * u1;
      const Vec3c b = cplx(1.0 - s) * v0 + cplx(s) * v1;
      const cplx an = a[kR] * n.r + a[kZ] * n.z;
      const cplx bn = std::conj(b[kR]) * n.r + std::conj(b[kZ]) * n.z;
      sum += rule.w[i] * len * (an * std::conj(b[kTheta]) - a[kTheta] * bn);
    }
  }
  return sum;
}

}  // namespace

cplx form_B(const TriangleMesh& mesh, const ModeField& u, const ModeField& v) {
  return boundary_form(mesh, u, v, BoundaryTag::Wall);
}

cplx form_B_axis(const TriangleMesh& mesh, const ModeField& u, const ModeField& v) {
  return boundary_form(mesh, u, v, BoundaryTag::Axis);
}

cplx Decomposition::total(int k) const {
  const double kk = static_cast<double>(k);
  return a0_meridian + curl_theta + kk * kk * over_r2 + kI * kk * (c - b_wall - b_axis);
}

Decomposition decompose(const Discretization& disc, const ModeField& u, const ModeField& v) {
  Decomposition d;
  const auto& mesh = disc.mesh();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    for (const auto& q : disc.quadrature().points(ti)) {
      const Jet a = disc.jet(u, ti, q.bary);
      const Jet b = disc.jet(v, ti, q.bary);
      const double r = q.p.r;
      const double w = q.weight * r;
      const cplx ca = a.dz[kR] - a.dr[kZ];
      const cplx cb = b.dz[kR] - b.dr[kZ];
      const cplx da = a.u[kR] / r + a.dr[kR] + a.dz[kZ];
      const cplx db = b.u[kR] / r + b.dr[kR] + b.dz[kZ];
      d.a0_meridian += w * (ca * std::conj(cb) + da * std::conj(db));
      const cplx t1a = -a.dz[kTheta], t2a = a.dr[kTheta] + a.u[kTheta] / r;
      const cplx t1b = -b.dz[kTheta], t2b = b.dr[kTheta] + b.u[kTheta] / r;
      d.curl_theta += w * (t1a * std::conj(t1b) + t2a * std::conj(t2b));
      d.over_r2 += w * dotc(a.u, b.u) / (r * r);
      d.c += w * 2.0 * (a.u[kTheta] * std::conj(b.u[kR]) - a.u[kR] * std::conj(b.u[kTheta])) / (r * r);
    }
  }
  d.b_wall = form_B(mesh, u, v);
  d.b_axis = form_B_axis(mesh, u, v);
  return d;
}

cplx a_k_via_decomposition(const Discretization& disc, const ModeField& u, const ModeField& v, int k) {
  return decompose(disc, u, v).total(k);
}

cplx shift_mode(cplx a_m, cplx over_r2, cplx c, int m, int k) {
  const double kk = static_cast<double>(k);
  const double mm = static_cast<double>(m);
  return a_m + (kk * kk - mm * mm) * over_r2 + kI * (kk - mm) * c;
}

double h1_seminorm_squared(const Discretization& disc, const ModeField& u) {
  return disc
      .integrate([&](int t, const QuadPoint& q) {
        const Jet j = disc.jet(u, t, q.bary);
        return cplx(norm2(j.dr) + norm2(j.dz));
      })
      .real();
}

AssembledSystem assemble_a_k(const Discretization& disc, const ConstraintSet& constraints) {
  check_mesh(disc, constraints);
  const auto& mesh = disc.mesh();
  const int k = constraints.k();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_triangles() * 81);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const auto& tri = mesh.triangles()[t];
    std::array<std::array<cplx, 9>, 9> local{};
    for (const auto& q : disc.quadrature().points(ti)) {
      const LocalBasis lb = local_basis(disc.gradients(ti), q.bary, q.p.r, k);
      const double w = q.weight * q.p.r;
      for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
          local[i][j] += w * (dotc(lb.curl[j], lb.curl[i]) + lb.div[j] * std::conj(lb.div[i]));
    }
    std::array<Expansion, 9> ex;
    for (std::size_t i = 0; i < 9; ++i) ex[i] = expansion(constraints, dof_index(tri[i / 3], static_cast<int>(i % 3)));
    for (std::size_t i = 0; i < 9; ++i) {
      if (ex[i].index < 0) continue;
      for (std::size_t j = 0; j < 9; ++j) {
        if (ex[j].index < 0) continue;
        triplets.push_back({static_cast<std::size_t>(ex[i].index), static_cast<std::size_t>(ex[j].index),
                            std::conj(ex[i].coef) * ex[j].coef * local[i][j]});
      }
    }
  }
  return {HermitianSparse::from_triplets(constraints.num_free(), std::move(triplets)), constraints, k};
}

std::vector<cplx> assemble_load(const Discretization& disc, const ConstraintSet& constraints,
                                const LoadIntegrand& integrand) {
  check_mesh(disc, constraints);
  const auto& mesh = disc.mesh();
  const int k = constraints.k();
  std::vector<cplx> load(constraints.num_free(), 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const auto& tri = mesh.triangles()[t];
    std::array<cplx, 9> local{};
    for (const auto& q : disc.quadrature().points(ti)) {
      Vec3c f{};
      cplx g{};
      integrand(ti, q, f, g);
      if (!is_finite(f) || !std::isfinite(g.real()) || !std::isfinite(g.imag()))
        throw InvalidArgument("assemble_load: non-finite right-hand side value");
      const LocalBasis lb = local_basis(disc.gradients(ti), q.bary, q.p.r, k);
      const double w = q.weight * q.p.r;
      for (std::size_t i = 0; i < 9; ++i) local[i] += w * (dotc(f, lb.curl[i]) + g * std::conj(lb.div[i]));
    }
    for (std::size_t i = 0; i < 9; ++i) {
      const Expansion e = expansion(constraints, dof_index(tri[i / 3], static_cast<int>(i % 3)));
      if (e.index >= 0) load[static_cast<std::size_t>(e.index)] += std::conj(e.coef) * local[i];
    }
  }
  return load;
}

std::vector<cplx> assemble_load(const Discretization& disc, const ConstraintSet& constraints,
                                const std::function<Vec3c(Point)>& f, const std::function<cplx(Point)>& g) {
  return assemble_load(disc, constraints, [&](int, const QuadPoint& q, Vec3c& fv, cplx& gv) {
    fv = f ? f(q.p) : Vec3c{};
    gv = g ? g(q.p) : cplx{};
  });
}

std::vector<cplx> apply_form(const Discretization& disc, const ConstraintSet& constraints, const FieldEvaluator& u) {
  return assemble_load(disc, constraints, [&](int t, const QuadPoint& q, Vec3c& f, cplx& g) {
    const PointValue pv = u(t, q);
    f = pv.curl;
    g = pv.div;
  });
}

std::vector<cplx> pair_with_free(const Discretization& disc, const ConstraintSet& constraints,
                                 const FieldEvaluator& u, PairingForm form) {
  check_mesh(disc, constraints);
  const auto& mesh = disc.mesh();
  std::vector<cplx> out(constraints.num_free(), 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const auto& tri = mesh.triangles()[t];
    std::array<cplx, 9> local{};
    for (const auto& q : disc.quadrature().points(ti)) {
      const Vec3c a = u(ti, q).value;
      const double r = q.p.r;
      const double w = q.weight / r;  // weight r times 1/r^2
      for (std::size_t i = 0; i < 9; ++i) {
        const std::size_t c = i % 3;
        const double lam = q.bary[i / 3];
        if (form == PairingForm::OverR2) {
          local[i] += w * a[c] * lam;
        } else {
          // 2 (a_theta conj(v_r) - a_r conj(v_theta)) with v = lam e_c
          if (c == kR) local[i] += w * 2.0 * a[kTheta] * lam;
          if (c == kTheta) local[i] -= w * 2.0 * a[kR] * lam;
        }
      }
    }
    for (std::size_t i = 0; i < 9; ++i) {
      const Expansion e = expansion(constraints, dof_index(tri[i / 3], static_cast<int>(i % 3)));
      if (e.index >= 0) out[static_cast<std::size_t>(e.index)] += std::conj(e.coef) * local[i];
    }
  }
  return out;
}

}  // namespace axm
