#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "axm/femcore.hpp"
#include "axm/linalg.hpp"
#include "axm/modal_ops.hpp"
#include "axm/singular.hpp"

namespace axm {

/// Mode-k data (f^k, g^k) of an electric (X) or magnetic (Y) problem with homogeneous wall conditions.
struct ModeProblem {
  int k = 0;
  Space space = Space::X;
  LoadIntegrand data;               // f^k and g^k at quadrature points; empty means zero data
  bool require_mean_zero_g = false;  // checked for k = 0 only
};

ModeProblem make_problem(int k, Space space, std::function<Vec3c(Point)> f, std::function<cplx(Point)> g);

/// Throws InvalidArgument when the flag demands a mean-zero g^0 and the weighted mean exceeds 1e-8 relative.
void check_compatibility(const Discretization& disc, const ModeProblem& problem);

struct ModeDiagnostics {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  std::size_t unknowns = 0;
  /// (f, curl y) / (curl y, curl y): the singular coefficient when y is divergence free and g = 0.
  cplx c_curl_only{};
  /// |a_k(regular, y)| / (|regular|_a |y|_a), a posteriori.
  double orthogonality = 0.0;
  /// Bordered path: Schur complement and the plain-transpose coefficient for comparison.
  cplx schur{};
  cplx c_transpose{};
};

struct ModeSolution {
  int k = 0;
  Space space = Space::X;
  ModeField regular;
  cplx c{};
  std::shared_ptr<const SingularBasis> basis;  // none on domains without a reentrant corner
  ModeDiagnostics diagnostics;
};

/// Regular-only solve: a_k(u, v) = (f, curl_k v) + (g, div_k v) on the constrained space.
ModeSolution solve_mode_regular(const Discretization& disc, const ModeProblem& problem, const CgOptions& cg = {});

/// |k| <= 2 (or any k with a basis of the same mode): C = l(y) / a_k(y, y), then the regular
/// part from the constrained system with the unmodified load.
ModeSolution solve_mode_orthogonal(const Discretization& disc, const ModeProblem& problem,
                                   std::shared_ptr<const SingularBasis> basis, const CgOptions& cg = {});

enum class CouplingPath { Shift, Direct };

struct BorderedOptions {
  CgOptions cg;
  Pairing pairing = Pairing::Conjugate;
  /// Shift: couplings to the mode-2 basis from its mode-2 form plus the (k^2 - 4) and i (k - 2) corrections.
  CouplingPath coupling = CouplingPath::Shift;
};

/// |k| > 2 with the basis of mode sign(k) 2: regular unknowns and C from the bordered system.
ModeSolution solve_mode_bordered(const Discretization& disc, const ModeProblem& problem,
                                 std::shared_ptr<const SingularBasis> basis2, const BorderedOptions& opts = {});

/// Total mode field, regular + C (basis), evaluated with mode-k operators.
FieldEvaluator mode_evaluator(const Discretization& disc, const ModeSolution& sol);
/// Nodal total; the principal part is omitted at the corner vertex.
ModeField mode_nodal(const TriangleMesh& mesh, const ModeSolution& sol);

// ---- Fourier analysis and synthesis ----

using Vector3d = std::array<double, 3>;
/// Real 3D data in cylindrical components at (r, theta, z).
using Field3d = std::function<Vector3d(double r, double theta, double z)>;
using Scalar3d = std::function<double(double r, double theta, double z)>;

/// Coefficients w^k, k = -N..N, of M uniform samples w(2 pi m / M):
/// w^k = (sqrt(2 pi) / M) sum_m w_m exp(-i k theta_m). Requires M >= 4N + 1.
std::vector<cplx> fourier_coefficients(std::span<const cplx> samples, int order);
/// (1 / sqrt(2 pi)) sum_k w^k exp(i k theta) for coefficients ordered k = -N..N.
cplx fourier_synthesis(std::span<const cplx> coefficients, double theta);

inline int default_theta_samples(int order) { return 4 * order + 1; }

/// Per-mode data f^k, g^k at every quadrature point of a discretization.
class ModalRhs {
 public:
  ModalRhs(const Discretization& disc, const Field3d& f, const Scalar3d& g, int order, int samples = 0);

  int order() const { return order_; }
  /// Data integrand of mode k; valid while this object lives.
  LoadIntegrand mode(int k) const;
  Vec3c f(int k, std::size_t point) const { return f_[point * width() + static_cast<std::size_t>(k + order_)]; }
  cplx g(int k, std::size_t point) const { return g_[point * width() + static_cast<std::size_t>(k + order_)]; }

 private:
  std::size_t width() const { return static_cast<std::size_t>(2 * order_ + 1); }
  const ElementQuadrature* quad_;
  int order_;
  std::vector<Vec3c> f_;
  std::vector<cplx> g_;
};

struct FourierSolution {
  int order = 0;
  Space space = Space::X;
  std::vector<ModeSolution> modes;  // k = -order..order

  const ModeSolution& mode(int k) const;
};

struct FourierOptions {
  BorderedOptions bordered;
  unsigned threads = 1;
  /// Solve |k| > 2 with a directly computed basis of that mode instead of the bordered system.
  bool direct_high_modes = false;
  bool require_mean_zero_g = false;
};

/// Solves modes -N..N. With one reentrant corner, bases for |k| <= 2 are computed once and
/// |k| > 2 use the bordered system; without corners every mode is regular.
FourierSolution solve_fourier(const Discretization& disc, std::span<const CornerDescriptor> corners, Space space,
                              const ModalRhs& rhs, const FourierOptions& opts = {});

/// Complex cylindrical components at every vertex for the azimuth theta.
std::vector<Vec3c> synthesize(const TriangleMesh& mesh, const FourierSolution& sol, double theta);

/// Nodal totals of all modes, k = -N..N.
std::vector<ModeField> nodal_modes(const TriangleMesh& mesh, const FourierSolution& sol);

/// Samples at theta_j = 2 pi j / T: result[j][vertex].
std::vector<std::vector<Vec3c>> sample_3d(const TriangleMesh& mesh, const FourierSolution& sol, int theta_samples);

/// Re-analysis of theta samples back to nodal modes k = -N..N.
std::vector<ModeField> analyze_samples(const std::vector<std::vector<Vec3c>>& samples, int order);

struct ErrorNorms {
  double l2 = 0.0;      // (integral |u - u_ex|^2 r dr dz)^(1/2)
  double energy = 0.0;  // a_k(u - u_ex, u - u_ex)^(1/2)
};
ErrorNorms error_norms(const Discretization& disc, const FieldEvaluator& field, const FieldEvaluator& exact);

}  // namespace axm
