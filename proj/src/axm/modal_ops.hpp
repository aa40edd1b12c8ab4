#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "axm/femcore.hpp"
#include "axm/linalg.hpp"
#include "axm/mesh.hpp"
#include "axm/quadrature.hpp"
#include "axm/types.hpp"

namespace axm {

/// Value and meridian derivatives of a vector field at a point.
struct Jet {
  Vec3c u{};
  Vec3c dr{};
  Vec3c dz{};
  double r = 0.0;
};

Vec3c curl_k(const Jet& j, int k);
cplx div_k(const Jet& j, int k);
/// grad_k of a scalar with value w and derivatives (dw_dr, dw_dz) at radius r.
Vec3c grad_k(cplx w, cplx dw_dr, cplx dw_dz, double r, int k);

/// Mesh plus the quadrature and element geometry shared by every integral on it.
class Discretization {
 public:
  explicit Discretization(TriangleMesh mesh, std::optional<Point> singular_point = std::nullopt);

  const TriangleMesh& mesh() const { return mesh_; }
  const ElementQuadrature& quadrature() const { return quad_; }
  const std::array<Point, 3>& gradients(int t) const { return grads_[static_cast<std::size_t>(t)]; }

  /// Jet of a nodal field inside triangle t at barycentric coordinates bary.
  Jet jet(const ModeField& field, int t, const std::array<double, 3>& bary) const;

  /// Sum over elements and quadrature points of weight * r * integrand(t, q).
  template <class F>
  cplx integrate(F&& integrand) const {
    cplx sum = 0.0;
    for (std::size_t t = 0; t < mesh_.num_triangles(); ++t) {
      cplx part = 0.0;
      for (const auto& q : quad_.points(static_cast<int>(t))) part += q.weight * q.p.r * integrand(static_cast<int>(t), q);
      sum += part;
    }
    return sum;
  }

 private:
  TriangleMesh mesh_;
  ElementQuadrature quad_;
  std::vector<std::array<Point, 3>> grads_;
};

/// Pointwise operators of the P1 interpolant; throw InvalidArgument at r <= 0 or outside the mesh.
Vec3c eval_curl_k(const TriangleMesh& mesh, const ModeField& field, int k, Point p);
cplx eval_div_k(const TriangleMesh& mesh, const ModeField& field, int k, Point p);
Vec3c eval_grad_k(const TriangleMesh& mesh, std::span<const cplx> scalar, int k, Point p);

/// Field value with its mode-k curl and divergence at one quadrature point.
struct PointValue {
  Vec3c value{};
  Vec3c curl{};
  cplx div{};
};
using FieldEvaluator = std::function<PointValue(int t, const QuadPoint& q)>;

FieldEvaluator p1_evaluator(const Discretization& disc, const ModeField& field, int k);
FieldEvaluator add(FieldEvaluator a, FieldEvaluator b, cplx scale_b = 1.0);

/// a_k(u, v) = (curl_k u, curl_k v) + (div_k u, div_k v) in L^2 with weight r; v conjugated.
cplx form_a(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v);
cplx form_a(const Discretization& disc, const ModeField& u, const ModeField& v, int k);
/// (u, v) in L^2 with weight r.
cplx form_l2(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v);
/// Integral of u . conj(v) / r^2 with weight r.
cplx form_over_r2(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v);
/// Integral of 2 (u_theta conj(v_r) - u_r conj(v_theta)) / r^2 with weight r.
cplx form_C(const Discretization& disc, const FieldEvaluator& u, const FieldEvaluator& v);

/// P1 overloads. `axis_flag`, when given, is set if either field is nonzero at an axis
/// vertex, where the continuous integral may diverge.
cplx form_over_r2(const Discretization& disc, const ModeField& u, const ModeField& v, bool* axis_flag = nullptr);
cplx form_C(const Discretization& disc, const ModeField& u, const ModeField& v, bool* axis_flag = nullptr);

/// Integral over the wall of (u_m . n) conj(v_theta) - u_theta (conj(v_m) . n), outward n.
cplx form_B(const TriangleMesh& mesh, const ModeField& u, const ModeField& v);
/// Same integrand over the axis segments (n = -e_r).
cplx form_B_axis(const TriangleMesh& mesh, const ModeField& u, const ModeField& v);

/// Terms of the splitting of a_k into meridian, azimuthal and coupling parts.
struct Decomposition {
  cplx a0_meridian{};   // a_0(u_m, v_m)
  cplx curl_theta{};    // (curl u_theta, curl v_theta) with curl w = (-d_z w, (1/r) d_r (r w))
  cplx over_r2{};       // (u/r, v/r)
  cplx c{};             // form_C
  cplx b_wall{};        // form_B
  cplx b_axis{};        // form_B_axis

  /// a_0m + curl_theta + k^2 over_r2 + i k (C - B_wall - B_axis).
  cplx total(int k) const;
};
Decomposition decompose(const Discretization& disc, const ModeField& u, const ModeField& v);
cplx a_k_via_decomposition(const Discretization& disc, const ModeField& u, const ModeField& v, int k);

/// a_k from the mode-m form: a_m + (k^2 - m^2) over_r2 + i (k - m) C, valid when the boundary terms vanish.
cplx shift_mode(cplx a_m, cplx over_r2, cplx c, int m, int k);
inline cplx shift_from_mode2(cplx a2, cplx over_r2, cplx c, int k) { return shift_mode(a2, over_r2, c, 2, k); }

/// Integral of |d_r u|^2 + |d_z u|^2 with weight r.
double h1_seminorm_squared(const Discretization& disc, const ModeField& u);

struct AssembledSystem {
  HermitianSparse matrix;
  ConstraintSet constraints;
  int k;
};

/// Matrix of a_k on the free dofs: entry (m, n) = a_k(Psi_n, Psi_m), ties folded in.
AssembledSystem assemble_a_k(const Discretization& disc, const ConstraintSet& constraints);

/// Per-point data (F, G) paired against the test functions: load_m = (F, curl_k Psi_m) + (G, div_k Psi_m).
using LoadIntegrand = std::function<void(int t, const QuadPoint& q, Vec3c& f, cplx& g)>;
std::vector<cplx> assemble_load(const Discretization& disc, const ConstraintSet& constraints,
                                const LoadIntegrand& integrand);
std::vector<cplx> assemble_load(const Discretization& disc, const ConstraintSet& constraints,
                                const std::function<Vec3c(Point)>& f, const std::function<cplx(Point)>& g);
/// Vector a_k(u, Psi_m) over the free dofs.
std::vector<cplx> apply_form(const Discretization& disc, const ConstraintSet& constraints, const FieldEvaluator& u);

/// Vector of a single form against the free test functions: (u, Psi_m)-type pairings.
enum class PairingForm { OverR2, C };
std::vector<cplx> pair_with_free(const Discretization& disc, const ConstraintSet& constraints,
                                 const FieldEvaluator& u, PairingForm form);

}  // namespace axm
