#pragma once

#include <span>
#include <vector>

#include "axm/femcore.hpp"
#include "axm/linalg.hpp"
#include "axm/mesh.hpp"
#include "axm/modal_ops.hpp"
#include "axm/types.hpp"

namespace axm {

enum class PrincipalKind { EdgeElectric, EdgeMagnetic, Conical };

/// Analytic leading term of a corner or cone singularity.
struct PrincipalPart {
  PrincipalKind kind = PrincipalKind::EdgeElectric;
  CornerDescriptor corner;  // edge kinds
  ConicalDescriptor cone;   // conical kind
  double nu = 0.0;          // conical kind

  static PrincipalPart edge(Space space, const CornerDescriptor& corner);
  static PrincipalPart conical(const ConicalDescriptor& cone, double nu);
};

/// Throws InvalidArgument at the singular point.
Vec3c eval_principal(const PrincipalPart& pp, Point p);

struct CurlDiv {
  Vec3c curl{};
  cplx div{};
};
/// Closed-form curl_k and div_k of the edge principal parts; the conical kind is unsupported.
CurlDiv eval_principal_curl_div(const PrincipalPart& pp, int k, Point p);

FieldEvaluator principal_evaluator(const PrincipalPart& pp, int k);

struct SolveDiagnostics {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  std::size_t unknowns = 0;
};

/// One singular complement function: principal part (coefficient one) plus regular part.
struct SingularBasis {
  int k = 0;
  Space space = Space::X;
  PrincipalPart principal;
  ModeField regular;  // carries the lifted trace -principal on the wall
  SolveDiagnostics diagnostics;
};

struct BasisOptions {
  CgOptions cg;
  /// Permit |k| > 2 (used to cross-check the reuse of the mode-2 basis).
  bool allow_any_k = false;
};

/// Solves a_k(reg, v) = -a_k(principal, v) for all regular v, with reg = -principal on the wall.
/// The discretization should carry the corner as its singular point.
SingularBasis compute_basis(const Discretization& disc, const CornerDescriptor& corner, int k, Space space,
                            const BasisOptions& opts = {});

/// Total field (regular + principal) with mode-k operators; k may differ from basis.k.
FieldEvaluator basis_evaluator(const Discretization& disc, const SingularBasis& basis, int k);
FieldEvaluator basis_evaluator(const Discretization& disc, const SingularBasis& basis);

/// Nodal samples of the total field; the principal part is omitted at the corner vertex.
ModeField basis_nodal(const TriangleMesh& mesh, const SingularBasis& basis);

/// Number of singular functions of mode k: one per reentrant edge, plus one per singular
/// cone for the electric field at k = 0.
int singular_dimension(std::span<const CornerDescriptor> corners, std::span<const ConicalDescriptor> cones, int k,
                       Space space);

}  // namespace axm
