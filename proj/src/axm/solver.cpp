#include "axm/solver.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "axm/error.hpp"

namespace axm {

ModeProblem make_problem(int k, Space space, std::function<Vec3c(Point)> f, std::function<cplx(Point)> g) {
  ModeProblem p;
  p.k = k;
  p.space = space;
  p.data = [f = std::move(f), g = std::move(g)](int, const QuadPoint& q, Vec3c& fv, cplx& gv) {
    fv = f ? f(q.p) : Vec3c{};
    gv = g ? g(q.p) : cplx{};
  };
  return p;
}

void check_compatibility(const Discretization& disc, const ModeProblem& problem) {
  if (!problem.require_mean_zero_g || problem.k != 0 || !problem.data) return;
  cplx mean = 0.0;
  double scale = 0.0;
  disc.integrate([&](int t, const QuadPoint& q) {
    Vec3c f{};
    cplx g{};
    problem.data(t, q, f, g);
    mean += q.weight * q.p.r * g;
    scale += q.weight * q.p.r * std::abs(g);
    return cplx{};
  });
  if (std::abs(mean) > 1e-8 * scale)
    throw InvalidArgument("right-hand side g of mode 0 must have zero mean for the magnetic problem");
}

namespace {

std::vector<cplx> load_for(const Discretization& disc, const ConstraintSet& cs, const ModeProblem& problem) {
  if (!problem.data) return std::vector<cplx>(cs.num_free(), 0.0);
  return assemble_load(disc, cs, problem.data);
}

/// l(y) = (f, curl y) + (g, div y) and the curl-only pieces.
struct DataPairing {
  cplx full{};
  cplx curl_part{};
  double curl_norm2 = 0.0;
};

DataPairing pair_data(const Discretization& disc, const ModeProblem& problem, const FieldEvaluator& y) {
  DataPairing out;
  disc.integrate([&](int t, const QuadPoint& q) {
    const PointValue pv = y(t, q);
    Vec3c f{};
    cplx g{};
    if (problem.data) problem.data(t, q, f, g);
    const double w = q.weight * q.p.r;
    const cplx fc = dotc(f, pv.curl);
    out.curl_part += w * fc;
    out.full += w * (fc + g * std::conj(pv.div));
    out.curl_norm2 += w * norm2(pv.curl);
    return cplx{};
  });
  return out;
}

double orthogonality(const Discretization& disc, const ModeField& regular, int k, const FieldEvaluator& y) {
  const auto reg = p1_evaluator(disc, regular, k);
  const double rn = std::sqrt(form_a(disc, reg, reg).real());
  const double yn = std::sqrt(form_a(disc, y, y).real());
  if (rn == 0.0 || yn == 0.0) return 0.0;
  return std::abs(form_a(disc, reg, y)) / (rn * yn);
}

void check_problem(const Discretization& disc, const ModeProblem& problem) {
  check_compatibility(disc, problem);
}

}  // namespace

ModeSolution solve_mode_regular(const Discretization& disc, const ModeProblem& problem, const CgOptions& cg) {
  check_problem(disc, problem);
  const ConstraintSet cs = build_constraints(disc.mesh(), problem.k, problem.space);
  const AssembledSystem sys = assemble_a_k(disc, cs);
  const auto res = solve_hpd(sys.matrix, load_for(disc, cs, problem), cg);
  ModeSolution sol;
  sol.k = problem.k;
  sol.space = problem.space;
  sol.regular = cs.expand(res.x);
  sol.diagnostics.iterations = res.iterations;
  sol.diagnostics.relative_residual = res.relative_residual;
  sol.diagnostics.unknowns = cs.num_free();
  return sol;
}

ModeSolution solve_mode_orthogonal(const Discretization& disc, const ModeProblem& problem,
                                   std::shared_ptr<const SingularBasis> basis, const CgOptions& cg) {
  if (!basis) throw InvalidArgument("solve_mode_orthogonal: missing singular basis");
  if (basis->k != problem.k || basis->space != problem.space)
    throw InvalidArgument("solve_mode_orthogonal: basis mode or space does not match the problem");
  ModeSolution sol = solve_mode_regular(disc, problem, cg);
  const FieldEvaluator y = basis_evaluator(disc, *basis);
  const double ayy = form_a(disc, y, y).real();
  if (!(ayy > 0.0) || !std::isfinite(ayy)) throw NumericalError("singular basis has vanishing energy");
  const DataPairing dp = pair_data(disc, problem, y);
  sol.c = dp.full / ayy;
  sol.diagnostics.c_curl_only = dp.curl_norm2 > 0.0 ? dp.curl_part / dp.curl_norm2 : cplx{};
  sol.diagnostics.orthogonality = orthogonality(disc, sol.regular, problem.k, y);
  sol.basis = std::move(basis);
  return sol;
}

ModeSolution solve_mode_bordered(const Discretization& disc, const ModeProblem& problem,
                                 std::shared_ptr<const SingularBasis> basis2, const BorderedOptions& opts) {
  const int k = problem.k;
  if (std::abs(k) <= 2) throw InvalidArgument("solve_mode_bordered: requires |k| > 2");
  if (!basis2) throw InvalidArgument("solve_mode_bordered: missing singular basis");
  const int m = k > 0 ? 2 : -2;
  if (basis2->k != m || basis2->space != problem.space)
    throw InvalidArgument("solve_mode_bordered: needs the basis of mode sign(k) 2 in the same space");
  check_problem(disc, problem);

  const auto& mesh = disc.mesh();
  const ConstraintSet cs = build_constraints(mesh, k, problem.space);
  const AssembledSystem sys = assemble_a_k(disc, cs);
  const FieldEvaluator yk = basis_evaluator(disc, *basis2, k);

  BorderedSystem bs;
  bs.k = &sys.matrix;
  bs.f_vec = load_for(disc, cs, problem);
  const DataPairing dp = pair_data(disc, problem, yk);
  bs.f = dp.full;
  if (opts.coupling == CouplingPath::Shift) {
    const ConstraintSet cs_m = build_constraints(mesh, m, problem.space);
    if (cs_m.num_free() != cs.num_free()) throw InvalidArgument("mode-2 and mode-k spaces differ");
    const FieldEvaluator ym = basis_evaluator(disc, *basis2, m);
    const auto am = apply_form(disc, cs_m, ym);
    const auto r2 = pair_with_free(disc, cs, ym, PairingForm::OverR2);
    const auto cc = pair_with_free(disc, cs, ym, PairingForm::C);
    bs.y.resize(am.size());
    for (std::size_t i = 0; i < am.size(); ++i) bs.y[i] = shift_mode(am[i], r2[i], cc[i], m, k);
    bs.alpha = shift_mode(form_a(disc, ym, ym), form_over_r2(disc, ym, ym), form_C(disc, ym, ym), m, k);
  } else {
    bs.y = apply_form(disc, cs, yk);
    bs.alpha = form_a(disc, yk, yk);
  }

  const BorderedResult br = solve_bordered(bs, opts.cg, opts.pairing);
  ModeSolution sol;
  sol.k = k;
  sol.space = problem.space;
  sol.regular = cs.expand(br.x);
  sol.c = br.c;
  sol.basis = std::move(basis2);
  sol.diagnostics.iterations = br.iterations;
  sol.diagnostics.unknowns = cs.num_free();
  sol.diagnostics.schur = br.schur;
  sol.diagnostics.c_transpose = opts.pairing == Pairing::Transpose ? br.c : br.c_other;
  {
    // residual of the first block row
    auto r = sys.matrix.multiply(br.x);
    double rn = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) rn += std::norm(r[i] + br.c * bs.y[i] - bs.f_vec[i]);
    const double fn = norm(bs.f_vec);
    sol.diagnostics.relative_residual = fn > 0.0 ? std::sqrt(rn) / fn : std::sqrt(rn);
  }
  sol.diagnostics.c_curl_only = dp.curl_norm2 > 0.0 ? dp.curl_part / dp.curl_norm2 : cplx{};
  return sol;
}

FieldEvaluator mode_evaluator(const Discretization& disc, const ModeSolution& sol) {
  FieldEvaluator reg = p1_evaluator(disc, sol.regular, sol.k);
  if (!sol.basis) return reg;
  return add(std::move(reg), basis_evaluator(disc, *sol.basis, sol.k), sol.c);
}

ModeField mode_nodal(const TriangleMesh& mesh, const ModeSolution& sol) {
  ModeField out = sol.regular;
  out.k = sol.k;
  if (!sol.basis) return out;
  const ModeField b = basis_nodal(mesh, *sol.basis);
  for (std::size_t v = 0; v < out.values.size(); ++v) out.values[v] = out.values[v] + sol.c * b.values[v];
  return out;
}

// ---- Fourier ----

std::vector<cplx> fourier_coefficients(std::span<const cplx> samples, int order) {
  if (order < 0) throw InvalidArgument("truncation order must be non-negative");
  const std::size_t m = samples.size();
  if (m < static_cast<std::size_t>(default_theta_samples(order)))
    throw InvalidArgument("aliasing guard: need at least 4N + 1 theta samples");
  std::vector<cplx> out(static_cast<std::size_t>(2 * order + 1));
  const double scale = std::sqrt(2.0 * kPi) / static_cast<double>(m);
  for (int k = -order; k <= order; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      s += samples[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(m));
    out[static_cast<std::size_t>(k + order)] = scale * s;
  }
  return out;
}

cplx fourier_synthesis(std::span<const cplx> coefficients, double theta) {
  const int order = static_cast<int>(coefficients.size() / 2);
  cplx s = 0.0;
  for (int k = -order; k <= order; ++k)
    s += coefficients[static_cast<std::size_t>(k + order)] * std::polar(1.0, static_cast<double>(k) * theta);
  return s / std::sqrt(2.0 * kPi);
}

ModalRhs::ModalRhs(const Discretization& disc, const Field3d& f, const Scalar3d& g, int order, int samples)
    : quad_(&disc.quadrature()), order_(order) {
  if (order < 0) throw InvalidArgument("truncation order must be non-negative");
  const int m = samples > 0 ? samples : default_theta_samples(order);
  if (m < default_theta_samples(order)) throw InvalidArgument("aliasing guard: need at least 4N + 1 theta samples");
  const std::size_t w = width();
  const std::size_t np = quad_->total_points();
  f_.assign(np * w, Vec3c{});
  g_.assign(np * w, cplx{});

  std::vector<cplx> phase(static_cast<std::size_t>(m) * w);
  const double scale = std::sqrt(2.0 * kPi) / m;
  for (int j = 0; j < m; ++j)
    for (int k = -order; k <= order; ++k)
      phase[static_cast<std::size_t>(j) * w + static_cast<std::size_t>(k + order)] =
          scale * std::polar(1.0, -2.0 * kPi * k * j / m);

  const auto& mesh = disc.mesh();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    for (const auto& q : quad_->points(static_cast<int>(t))) {
      const std::size_t idx = quad_->index_of(q);
      for (int j = 0; j < m; ++j) {
        const double theta = 2.0 * kPi * j / m;
        const Vector3d fv = f ? f(q.p.r, theta, q.p.z) : Vector3d{};
        const double gv = g ? g(q.p.r, theta, q.p.z) : 0.0;
        for (std::size_t kk = 0; kk < w; ++kk) {
          const cplx ph = phase[static_cast<std::size_t>(j) * w + kk];
          auto& fo = f_[idx * w + kk];
          for (std::size_t c = 0; c < 3; ++c) fo[c] += fv[c] * ph;
          g_[idx * w + kk] += gv * ph;
        }
      }
    }
  }
}

LoadIntegrand ModalRhs::mode(int k) const {
  if (std::abs(k) > order_) throw InvalidArgument("mode outside the analyzed range");
  return [this, k](int, const QuadPoint& q, Vec3c& fv, cplx& gv) {
    const std::size_t idx = quad_->index_of(q);
    fv = f(k, idx);
    gv = g(k, idx);
  };
}

const ModeSolution& FourierSolution::mode(int k) const {
  if (std::abs(k) > order || modes.size() != static_cast<std::size_t>(2 * order + 1))
    throw InvalidArgument("missing mode " + std::to_string(k));
  return modes[static_cast<std::size_t>(k + order)];
}

namespace {

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

FourierSolution solve_fourier(const Discretization& disc, std::span<const CornerDescriptor> corners, Space space,
                              const ModalRhs& rhs, const FourierOptions& opts) {
  if (corners.size() > 1) throw InvalidArgument("only a single reentrant corner is supported");
  const int n = rhs.order();
  const bool singular = !corners.empty();

  std::map<int, std::shared_ptr<const SingularBasis>> bases;
  if (singular) {
    for (int k = -n; k <= n; ++k) {
      const int bk = (std::abs(k) <= 2 || opts.direct_high_modes) ? k : (k > 0 ? 2 : -2);
      bases[bk] = nullptr;
    }
    std::vector<int> keys;
    for (const auto& [bk, _] : bases) keys.push_back(bk);
    std::vector<std::shared_ptr<const SingularBasis>> built(keys.size());
    BasisOptions bo;
    bo.cg = opts.bordered.cg;
    bo.allow_any_k = opts.direct_high_modes;
    parallel_for(keys.size(), opts.threads, [&](std::size_t i) {
      built[i] = std::make_shared<const SingularBasis>(compute_basis(disc, corners.front(), keys[i], space, bo));
    });
    for (std::size_t i = 0; i < keys.size(); ++i) bases[keys[i]] = built[i];
  }

  FourierSolution sol;
  sol.order = n;
  sol.space = space;
  sol.modes.resize(static_cast<std::size_t>(2 * n + 1));
  parallel_for(sol.modes.size(), opts.threads, [&](std::size_t i) {
    const int k = static_cast<int>(i) - n;
    ModeProblem p;
    p.k = k;
    p.space = space;
    p.data = rhs.mode(k);
    p.require_mean_zero_g = opts.require_mean_zero_g;
    if (!singular) {
      sol.modes[i] = solve_mode_regular(disc, p, opts.bordered.cg);
    } else if (std::abs(k) <= 2 || opts.direct_high_modes) {
      sol.modes[i] = solve_mode_orthogonal(disc, p, bases.at(k), opts.bordered.cg);
    } else {
      sol.modes[i] = solve_mode_bordered(disc, p, bases.at(k > 0 ? 2 : -2), opts.bordered);
    }
  });
  return sol;
}

std::vector<ModeField> nodal_modes(const TriangleMesh& mesh, const FourierSolution& sol) {
  std::vector<ModeField> out;
  out.reserve(sol.modes.size());
  for (const auto& m : sol.modes) out.push_back(mode_nodal(mesh, m));
  return out;
}

namespace {

std::vector<Vec3c> synthesize_nodal(const std::vector<ModeField>& modes, double theta) {
  const std::size_t nv = modes.empty() ? 0 : modes.front().values.size();
  std::vector<Vec3c> out(nv, Vec3c{});
  const double inv = 1.0 / std::sqrt(2.0 * kPi);
  for (const auto& m : modes) {
    const cplx ph = inv * std::polar(1.0, static_cast<double>(m.k) * theta);
    for (std::size_t v = 0; v < nv; ++v) out[v] = out[v] + ph * m.values[v];
  }
  return out;
}

}  // namespace

std::vector<Vec3c> synthesize(const TriangleMesh& mesh, const FourierSolution& sol, double theta) {
  return synthesize_nodal(nodal_modes(mesh, sol), theta);
}

std::vector<std::vector<Vec3c>> sample_3d(const TriangleMesh& mesh, const FourierSolution& sol, int theta_samples) {
  if (theta_samples < 1) throw InvalidArgument("need at least one theta sample");
  const auto modes = nodal_modes(mesh, sol);
  std::vector<std::vector<Vec3c>> out;
  out.reserve(static_cast<std::size_t>(theta_samples));
  for (int j = 0; j < theta_samples; ++j) out.push_back(synthesize_nodal(modes, 2.0 * kPi * j / theta_samples));
  return out;
}

std::vector<ModeField> analyze_samples(const std::vector<std::vector<Vec3c>>& samples, int order) {
  const std::size_t m = samples.size();
  if (m < static_cast<std::size_t>(default_theta_samples(order)))
    throw InvalidArgument("aliasing guard: need at least 4N + 1 theta samples");
  const std::size_t nv = samples.front().size();
  std::vector<ModeField> out;
  for (int k = -order; k <= order; ++k) out.emplace_back(k, nv);
  std::vector<cplx> buf(m);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t j = 0; j < m; ++j) buf[j] = samples[j][v][c];
      const auto coef = fourier_coefficients(buf, order);
      for (std::size_t i = 0; i < coef.size(); ++i) out[i].values[v][c] = coef[i];
    }
  }
  return out;
}

ErrorNorms error_norms(const Discretization& disc, const FieldEvaluator& field, const FieldEvaluator& exact) {
  const FieldEvaluator diff = add(field, exact, -1.0);
  ErrorNorms e;
  e.l2 = std::sqrt(std::max(0.0, form_l2(disc, diff, diff).real()));
  e.energy = std::sqrt(std::max(0.0, form_a(disc, diff, diff).real()));
  return e;
}

}  // namespace axm
