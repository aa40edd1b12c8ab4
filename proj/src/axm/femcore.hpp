#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "axm/mesh.hpp"
#include "axm/types.hpp"

namespace axm {

/// Complex nodal P1 field (u_r, u_theta, u_z) of Fourier mode k.
struct ModeField {
  int k = 0;
  std::vector<Vec3c> values;

  ModeField() = default;
  ModeField(int mode, std::size_t num_vertices) : k(mode), values(num_vertices, Vec3c{}) {}
};

inline std::size_t dof_index(int vertex, int component) {
  return 3 * static_cast<std::size_t>(vertex) + static_cast<std::size_t>(component);
}

enum class DofKind : std::uint8_t { Free, Fixed, Tied };
enum class FixSource : std::uint8_t { None, Axis, Wall, Derived };

struct DofConstraint {
  DofKind kind = DofKind::Free;
  FixSource source = FixSource::None;
  int wall_edge = -1;   // boundary edge imposing a Wall constraint
  std::size_t master = 0;  // Tied: value = coef * value(master)
  cplx coef{};
};

/// Essential conditions of X_(k) or Y_(k) resolved to per-dof Free / Fixed / Tied.
class ConstraintSet {
 public:
  ConstraintSet(int k, std::optional<Space> space, std::vector<DofConstraint> dofs);

  int k() const { return k_; }
  /// Empty for the unconstrained set.
  const std::optional<Space>& space() const { return space_; }

  std::size_t num_dofs() const { return dofs_.size(); }
  std::size_t num_vertices() const { return dofs_.size() / 3; }
  std::size_t num_free() const { return free_dofs_.size(); }
  const DofConstraint& dof(std::size_t d) const { return dofs_[d]; }
  /// Position of a Free dof among the unknowns, -1 otherwise.
  long free_index(std::size_t d) const { return free_index_[d]; }
  std::span<const std::size_t> free_dofs() const { return free_dofs_; }

  /// Homogeneous application: fixed dofs to zero, tied dofs follow their master.
  void apply(ModeField& field) const;
  /// Full field from unknowns (fixed dofs zero).
  ModeField expand(std::span<const cplx> free_values) const;
  std::vector<cplx> restrict_to_free(const ModeField& field) const;
  /// Max violation of the homogeneous constraints.
  double violation(const ModeField& field) const;

 private:
  int k_;
  std::optional<Space> space_;
  std::vector<DofConstraint> dofs_;
  std::vector<long> free_index_;
  std::vector<std::size_t> free_dofs_;
};

/// Wall conditions (X: u_theta and tangential meridian component; Y: normal meridian
/// component) plus the mode-dependent axis regularity conditions.
ConstraintSet build_constraints(const TriangleMesh& mesh, int k, Space space);

/// Every dof free; used for quadratic forms on unconstrained fields.
ConstraintSet unconstrained(const TriangleMesh& mesh, int k);

/// Field carrying the trace of g on the Wall-fixed dofs and zero elsewhere. Where g is
/// not finite at a vertex (a corner), each constrained component takes its one-sided
/// limit along the wall edge that imposes it.
ModeField lift_boundary(const TriangleMesh& mesh, const ConstraintSet& constraints,
                        const std::function<Vec3c(Point)>& g);

struct Location {
  int triangle = -1;
  std::array<double, 3> bary{};
};

/// Triangle containing p (closed), by exhaustive search.
std::optional<Location> locate(const TriangleMesh& mesh, Point p);

Vec3c interpolate(const TriangleMesh& mesh, const ModeField& field, const Location& loc);
/// Barycentric P1 interpolation; throws InvalidArgument outside the mesh.
Vec3c interpolate(const TriangleMesh& mesh, const ModeField& field, Point p);

}  // namespace axm
