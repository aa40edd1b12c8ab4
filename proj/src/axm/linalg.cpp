#include "axm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "axm/error.hpp"

namespace axm {

HermitianSparse HermitianSparse::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row >= n || t.col >= n) throw InvalidArgument("matrix entry out of range");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  HermitianSparse m;
  m.n_ = n;
  m.row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < triplets.size();) {
    std::size_t j = i;
    cplx sum = 0.0;
    while (j < triplets.size() && triplets[j].row == triplets[i].row && triplets[j].col == triplets[i].col)
      sum += triplets[j++].value;
    m.cols_.push_back(triplets[i].col);
    m.values_.push_back(sum);
    ++m.row_ptr_[triplets[i].row + 1];
    i = j;
  }
  for (std::size_t r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

void HermitianSparse::multiply(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != n_ || y.size() != n_) throw InvalidArgument("multiply: dimension mismatch");
  for (std::size_t r = 0; r < n_; ++r) {
    cplx s = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += values_[p] * x[cols_[p]];
    y[r] = s;
  }
}

std::vector<cplx> HermitianSparse::multiply(std::span<const cplx> x) const {
  std::vector<cplx> y(n_);
  multiply(x, y);
  return y;
}

cplx HermitianSparse::entry(std::size_t i, std::size_t j) const {
  const auto b = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto e = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(b, e, j);
  if (it == e || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

std::vector<cplx> HermitianSparse::diagonal() const {
  std::vector<cplx> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = entry(i, i);
  return d;
}

double HermitianSparse::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      worst = std::max(worst, std::abs(values_[p] - std::conj(entry(cols_[p], r))));
  return worst;
}

std::vector<cplx> HermitianSparse::to_dense() const {
  std::vector<cplx> d(n_ * n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) d[r * n_ + cols_[p]] = values_[p];
  return d;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

CgResult solve_hpd(const HermitianSparse& a, std::span<const cplx> b, const CgOptions& opts) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidArgument("solve_hpd: right-hand side has the wrong length");
  CgResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm(b);
  if (bnorm == 0.0) return res;

  std::vector<double> inv_diag(n);
  const auto diag = a.diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(diag[i].real() > 0.0)) throw NumericalError("solve_hpd: non-positive diagonal entry at row " + std::to_string(i));
    inv_diag[i] = 1.0 / diag[i].real();
  }

  const std::size_t maxit = opts.max_iterations ? opts.max_iterations : 20 * n;
  const std::size_t stride = std::max<std::size_t>(opts.history_stride, 1);
  std::vector<cplx> r(b.begin(), b.end()), z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = inner(r, z).real();
  res.history.push_back(std::sqrt(rz));

  double rel = 1.0;
  std::size_t it = 0;
  while (true) {
    rel = norm(r) / bnorm;
    if (rel <= opts.tol) break;
    if (it >= maxit)
      throw NumericalError("solve_hpd: no convergence after " + std::to_string(it) +
                           " iterations, relative residual " + std::to_string(rel));
    a.multiply(p, ap);
    const double pap = inner(p, ap).real();
    if (!(pap > 0.0)) throw NumericalError("solve_hpd: breakdown, matrix is not positive definite");
    const double step = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      res.x[i] += step * p[i];
      r[i] -= step * ap[i];
      z[i] = inv_diag[i] * r[i];
    }
    const double rz_new = inner(r, z).real();
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
    if (it % stride == 0) res.history.push_back(std::sqrt(std::max(rz, 0.0)));
  }
  if (it % stride != 0) res.history.push_back(std::sqrt(std::max(rz, 0.0)));
  res.iterations = it;
  res.relative_residual = rel;
  return res;
}

BorderedResult solve_bordered(const BorderedSystem& sys, const CgOptions& opts, Pairing pairing) {
  if (!sys.k) throw InvalidArgument("solve_bordered: missing matrix");
  const std::size_t n = sys.k->size();
  if (sys.y.size() != n || sys.f_vec.size() != n) throw InvalidArgument("solve_bordered: dimension mismatch");

  auto pair = [pairing](std::span<const cplx> a, std::span<const cplx> b) {
    if (pairing == Pairing::Conjugate) return inner(a, b);
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  const auto w = solve_hpd(*sys.k, sys.y, opts);
  const auto v = solve_hpd(*sys.k, sys.f_vec, opts);
  BorderedResult out;
  out.iterations = w.iterations + v.iterations;
  out.schur = sys.alpha - pair(sys.y, w.x);
  if (!(std::abs(out.schur) >= 1e-14 * std::abs(sys.alpha)) || out.schur == 0.0)
    throw NumericalError("solve_bordered: degenerate coupling, Schur complement vanishes");
  out.c = (sys.f - pair(sys.y, v.x)) / out.schur;
  {
    const Pairing other = pairing == Pairing::Conjugate ? Pairing::Transpose : Pairing::Conjugate;
    auto pair_other = [other](std::span<const cplx> a, std::span<const cplx> b) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (other == Pairing::Conjugate ? std::conj(a[i]) : a[i]) * b[i];
      return s;
    };
    const cplx schur_other = sys.alpha - pair_other(sys.y, w.x);
    out.c_other = schur_other == 0.0 ? cplx(std::nan(""), std::nan("")) : (sys.f - pair_other(sys.y, v.x)) / schur_other;
  }
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = v.x[i] - out.c * w.x[i];
  return out;
}

}  // namespace axm
