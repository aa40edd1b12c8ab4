#pragma once

#include <array>
#include <vector>

#include "axm/modal_ops.hpp"
#include "axm/types.hpp"

namespace axm {

/// Smooth exact mode fields on the meridian rectangle [0, R] x [0, 1] built from terms
/// c r^p (R^2 - r^2)^e Z(z), used for convergence studies. Each field satisfies the wall
/// and axis conditions of its space and mode.
class ManufacturedField {
 public:
  enum class ZFactor { Sin, Cos, Linear };  // sin(pi z), cos(pi z), 1 + z
  struct Term {
    cplx c;
    int p;
    int e;
    ZFactor z;
  };

  ManufacturedField(int k, Space space, double radius = 1.0);

  int k() const { return k_; }
  Space space() const { return space_; }

  Jet jet(Point p) const;
  Vec3c value(Point p) const { return jet(p).u; }
  Vec3c curl(Point p) const { return curl_k(jet(p), k_); }
  cplx div(Point p) const { return div_k(jet(p), k_); }

  FieldEvaluator evaluator() const;
  /// Nodal interpolant.
  ModeField interpolant(const TriangleMesh& mesh) const;

 private:
  int k_;
  Space space_;
  double radius_;
  std::array<std::vector<Term>, 3> comps_;
};

}  // namespace axm
