#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "axm/types.hpp"

namespace axm {

struct Triplet {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Complex compressed-row matrix holding a Hermitian form on the free dofs.
class HermitianSparse {
 public:
  HermitianSparse() = default;

  /// Duplicate entries are summed.
  static HermitianSparse from_triplets(std::size_t n, std::vector<Triplet> triplets);

  std::size_t size() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }
  std::span<const std::size_t> row_offsets() const { return row_ptr_; }
  std::span<const std::size_t> columns() const { return cols_; }
  std::span<const cplx> values() const { return values_; }

  /// y = A x.
  void multiply(std::span<const cplx> x, std::span<cplx> y) const;
  std::vector<cplx> multiply(std::span<const cplx> x) const;
  std::vector<cplx> diagonal() const;
  cplx entry(std::size_t i, std::size_t j) const;

  /// max |A_ij - conj(A_ji)| over stored entries.
  double hermitian_defect() const;
  /// Row-major dense copy.
  std::vector<cplx> to_dense() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<cplx> values_;
};

struct CgOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 0;  // 0: 20 n
  std::size_t history_stride = 10;
};

struct CgResult {
  std::vector<cplx> x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  /// Preconditioned residual norm sqrt(r^H M^-1 r), every history_stride iterations and at exit.
  std::vector<double> history;
};

/// Jacobi-preconditioned conjugate gradients for a Hermitian positive definite matrix.
/// Throws NumericalError on a non-positive diagonal, breakdown, or iteration cap.
CgResult solve_hpd(const HermitianSparse& a, std::span<const cplx> b, const CgOptions& opts = {});

/// [K y; y' alpha] [x; c] = [F; f], where y' is y^H (Hermitian pairing) or y^T.
struct BorderedSystem {
  const HermitianSparse* k = nullptr;
  std::vector<cplx> y;
  cplx alpha{};
  std::vector<cplx> f_vec;
  cplx f{};
};

enum class Pairing { Conjugate, Transpose };

struct BorderedResult {
  std::vector<cplx> x;
  cplx c{};
  cplx schur{};  // alpha - y' K^-1 y
  cplx c_other{};  // scalar unknown under the other pairing, for comparison
  std::size_t iterations = 0;
};

/// Schur-complement elimination of the scalar unknown. Throws NumericalError when
/// |alpha - y' K^-1 y| < 1e-14 |alpha|.
BorderedResult solve_bordered(const BorderedSystem& sys, const CgOptions& opts = {},
                              Pairing pairing = Pairing::Conjugate);

/// Conjugate-linear inner product sum conj(a_i) b_i.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> a);

}  // namespace axm
