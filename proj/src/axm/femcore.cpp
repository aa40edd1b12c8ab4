#include "axm/femcore.hpp"

#include <algorithm>
#include <cmath>

#include "axm/error.hpp"

namespace axm {

ConstraintSet::ConstraintSet(int k, std::optional<Space> space, std::vector<DofConstraint> dofs)
    : k_(k), space_(space), dofs_(std::move(dofs)), free_index_(dofs_.size(), -1) {
  for (std::size_t d = 0; d < dofs_.size(); ++d) {
    if (dofs_[d].kind == DofKind::Free) {
      free_index_[d] = static_cast<long>(free_dofs_.size());
      free_dofs_.push_back(d);
    }
  }
  for (const auto& c : dofs_) {
    if (c.kind == DofKind::Tied && (c.master >= dofs_.size() || dofs_[c.master].kind != DofKind::Free))
      throw InvalidArgument("tied dof must follow a free master");
  }
}

void ConstraintSet::apply(ModeField& field) const {
  if (field.values.size() * 3 != dofs_.size()) throw InvalidArgument("field size does not match constraint set");
  for (std::size_t d = 0; d < dofs_.size(); ++d) {
    auto& slot = field.values[d / 3][d % 3];
    if (dofs_[d].kind == DofKind::Fixed) slot = 0.0;
  }
  for (std::size_t d = 0; d < dofs_.size(); ++d) {
    if (dofs_[d].kind == DofKind::Tied)
      field.values[d / 3][d % 3] = dofs_[d].coef * field.values[dofs_[d].master / 3][dofs_[d].master % 3];
  }
}

ModeField ConstraintSet::expand(std::span<const cplx> free_values) const {
  if (free_values.size() != free_dofs_.size()) throw InvalidArgument("unknown vector has the wrong length");
  ModeField f(k_, num_vertices());
  for (std::size_t i = 0; i < free_dofs_.size(); ++i) f.values[free_dofs_[i] / 3][free_dofs_[i] % 3] = free_values[i];
  apply(f);
  return f;
}

std::vector<cplx> ConstraintSet::restrict_to_free(const ModeField& field) const {
  std::vector<cplx> out(free_dofs_.size());
  for (std::size_t i = 0; i < free_dofs_.size(); ++i) out[i] = field.values[free_dofs_[i] / 3][free_dofs_[i] % 3];
  return out;
}

double ConstraintSet::violation(const ModeField& field) const {
  double worst = 0.0;
  for (std::size_t d = 0; d < dofs_.size(); ++d) {
    const cplx v = field.values[d / 3][d % 3];
    if (dofs_[d].kind == DofKind::Fixed) worst = std::max(worst, std::abs(v));
    if (dofs_[d].kind == DofKind::Tied)
      worst = std::max(worst, std::abs(v - dofs_[d].coef * field.values[dofs_[d].master / 3][dofs_[d].master % 3]));
  }
  return worst;
}

namespace {

enum class WallDirection { Horizontal, Vertical };

WallDirection wall_direction(const TriangleMesh& mesh, const BoundaryEdge& e) {
  const Point d = mesh.vertex(e.v[1]) - mesh.vertex(e.v[0]);
  const double len = norm(d);
  if (std::abs(d.z) <= 1e-12 * len) return WallDirection::Horizontal;
  if (std::abs(d.r) <= 1e-12 * len) return WallDirection::Vertical;
  throw InvalidArgument("build_constraints: wall edge is not aligned with the r or z axis");
}

}  // namespace

ConstraintSet build_constraints(const TriangleMesh& mesh, int k, Space space) {
  const std::size_t nv = mesh.num_vertices();
  std::vector<DofConstraint> dofs(3 * nv);

  auto fix = [&dofs](int v, int comp, FixSource src, int edge) {
    auto& c = dofs[dof_index(v, comp)];
    if (c.kind == DofKind::Fixed && c.source == FixSource::Wall) return;  // keep the first wall edge
    c.kind = DofKind::Fixed;
    c.source = src;
    c.wall_edge = edge;
  };

  const auto boundary = mesh.boundary();
  for (std::size_t ei = 0; ei < boundary.size(); ++ei) {
    const auto& e = boundary[ei];
    if (e.tag != BoundaryTag::Wall) continue;
    const WallDirection dir = wall_direction(mesh, e);
    for (int v : e.v) {
      if (space == Space::X) {
        fix(v, kTheta, FixSource::Wall, static_cast<int>(ei));
        fix(v, dir == WallDirection::Horizontal ? kR : kZ, FixSource::Wall, static_cast<int>(ei));
      } else {
        fix(v, dir == WallDirection::Horizontal ? kZ : kR, FixSource::Wall, static_cast<int>(ei));
      }
    }
  }

  const int ak = std::abs(k);
  for (std::size_t v = 0; v < nv; ++v) {
    if (mesh.vertex(static_cast<int>(v)).r != 0.0) continue;
    const int iv = static_cast<int>(v);
    auto fix_axis = [&](int comp) {
      auto& c = dofs[dof_index(iv, comp)];
      if (c.kind != DofKind::Fixed) fix(iv, comp, FixSource::Axis, -1);
    };
    if (ak == 0) {
      fix_axis(kR);
      fix_axis(kTheta);
    } else if (ak == 1) {
      fix_axis(kZ);
      auto& cr = dofs[dof_index(iv, kR)];
      auto& ct = dofs[dof_index(iv, kTheta)];
      if (cr.kind == DofKind::Fixed || ct.kind == DofKind::Fixed) {
        // u_theta = i sgn(k) u_r with either side pinned pins both
        if (cr.kind != DofKind::Fixed) fix(iv, kR, FixSource::Derived, -1);
        if (ct.kind != DofKind::Fixed) fix(iv, kTheta, FixSource::Derived, -1);
      } else {
        ct.kind = DofKind::Tied;
        ct.master = dof_index(iv, kR);
        ct.coef = cplx(0.0, k > 0 ? 1.0 : -1.0);
      }
    } else {
      fix_axis(kR);
      fix_axis(kTheta);
      fix_axis(kZ);
    }
  }
  return ConstraintSet(k, space, std::move(dofs));
}

ConstraintSet unconstrained(const TriangleMesh& mesh, int k) {
  return ConstraintSet(k, std::nullopt, std::vector<DofConstraint>(3 * mesh.num_vertices()));
}

ModeField lift_boundary(const TriangleMesh& mesh, const ConstraintSet& constraints,
                        const std::function<Vec3c(Point)>& g) {
  ModeField lift(constraints.k(), mesh.num_vertices());
  const auto boundary = mesh.boundary();
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    bool any = false;
    for (int c = 0; c < 3; ++c) any |= constraints.dof(3 * v + static_cast<std::size_t>(c)).source == FixSource::Wall;
    if (!any) continue;
    const Point p = mesh.vertex(static_cast<int>(v));
    const Vec3c gv = g(p);
    for (int c = 0; c < 3; ++c) {
      const auto& dc = constraints.dof(3 * v + static_cast<std::size_t>(c));
      if (dc.source != FixSource::Wall) continue;
      cplx val = gv[static_cast<std::size_t>(c)];
      if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
        const auto& e = boundary[static_cast<std::size_t>(dc.wall_edge)];
        const int other = e.v[0] == static_cast<int>(v) ? e.v[1] : e.v[0];
        const Point q = p + 1e-9 * (mesh.vertex(other) - p);
        val = g(q)[static_cast<std::size_t>(c)];
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
          throw InvalidArgument("lift_boundary: trace is not finite at a boundary vertex");
      }
      lift.values[v][static_cast<std::size_t>(c)] = val;
    }
  }
  return lift;
}

std::optional<Location> locate(const TriangleMesh& mesh, Point p) {
  constexpr double tol = 1e-12;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto q = mesh.triangle_points(static_cast<int>(t));
    const double a2 = cross(q[1] - q[0], q[2] - q[0]);
    const double l0 = cross(q[1] - p, q[2] - p) / a2;
    const double l1 = cross(q[2] - p, q[0] - p) / a2;
    const double l2 = 1.0 - l0 - l1;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return Location{static_cast<int>(t), {l0, l1, l2}};
  }
  return std::nullopt;
}

Vec3c interpolate(const TriangleMesh& mesh, const ModeField& field, const Location& loc) {
  const auto& tri = mesh.triangles()[static_cast<std::size_t>(loc.triangle)];
  Vec3c out{};
  for (int a = 0; a < 3; ++a)
    out = out + cplx(loc.bary[static_cast<std::size_t>(a)]) * field.values[static_cast<std::size_t>(tri[static_cast<std::size_t>(a)])];
  return out;
}

Vec3c interpolate(const TriangleMesh& mesh, const ModeField& field, Point p) {
  const auto loc = locate(mesh, p);
  if (!loc) throw InvalidArgument("interpolate: point outside the mesh");
  return interpolate(mesh, field, *loc);
}

}  // namespace axm
