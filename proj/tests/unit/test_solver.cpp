#include <cmath>
#include <random>

#include "axm/error.hpp"
#include "axm/io.hpp"
#include "axm/manufactured.hpp"
#include "axm/solver.hpp"
#include "doctest.h"

using namespace axm;

namespace {

std::vector<cplx> sample(const std::function<cplx(double)>& w, int m) {
  std::vector<cplx> s(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) s[static_cast<std::size_t>(j)] = w(2.0 * kPi * j / m);
  return s;
}

}  // namespace

TEST_CASE("Fourier analysis") {
  const int n = 3, m = default_theta_samples(n);
  const auto c = fourier_coefficients(sample([](double t) { return std::cos(t); }, m), n);
  REQUIRE(c.size() == 7);
  for (int k = -n; k <= n; ++k) {
    const double expect = std::abs(k) == 1 ? std::sqrt(kPi / 2.0) : 0.0;
    CHECK(std::abs(c[static_cast<std::size_t>(k + n)] - expect) < 1e-14);
  }
  const auto flat = fourier_coefficients(sample([](double) { return 2.0; }, m), n);
  for (int k = -n; k <= n; ++k)
    CHECK(std::abs(flat[static_cast<std::size_t>(k + n)] - (k == 0 ? 2.0 * std::sqrt(2.0 * kPi) : 0.0)) < 1e-14);

  CHECK_THROWS_AS(fourier_coefficients(std::vector<cplx>(12), 3), InvalidArgument);

  // round trip of a band-limited signal
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> coef(11);
  for (auto& x : coef) x = {u(rng), u(rng)};
  const auto back = fourier_coefficients(sample([&](double t) { return fourier_synthesis(coef, t); }, 21), 5);
  for (std::size_t i = 0; i < coef.size(); ++i) CHECK(std::abs(back[i] - coef[i]) < 1e-12);

  // order zero: a single constant coefficient
  const std::vector<cplx> c0{cplx(3.0)};
  CHECK(std::abs(fourier_synthesis(c0, 1.3) - 3.0 / std::sqrt(2.0 * kPi)) < 1e-15);
}

TEST_CASE("regular mode solves") {
  const Discretization coarse(gen_rectangle(0, 1, 0, 1, 0.1)), fine(gen_rectangle(0, 1, 0, 1, 0.05));
  for (Space s : {Space::X, Space::Y}) {
    const ModeSolution zero = solve_mode_regular(coarse, ModeProblem{2, s, {}, false});
    for (const auto& v : zero.regular.values) CHECK(norm2(v) == 0.0);
    CHECK(zero.c == cplx(0.0));

    const ManufacturedField ex(1, s);
    const ModeProblem p = make_problem(1, s, [&](Point q) { return ex.curl(q); }, [&](Point q) { return ex.div(q); });
    const auto self = error_norms(coarse, ex.evaluator(), ex.evaluator());
    CHECK(self.l2 == 0.0);
    CHECK(self.energy == 0.0);
    ErrorNorms err[2];
    int i = 0;
    for (const Discretization* d : {&coarse, &fine}) {
      const ModeSolution sol = solve_mode_regular(*d, p, {1e-12});
      CHECK(sol.diagnostics.relative_residual <= 1e-12);
      CHECK(sol.diagnostics.unknowns > 0);
      err[i++] = error_norms(*d, mode_evaluator(*d, sol), ex.evaluator());
    }
    // P1 rates: second order in L2, first order in energy
    CHECK(err[0].l2 / err[1].l2 > 3.4);
    CHECK(err[0].energy / err[1].energy > 1.8);
  }
}

TEST_CASE("compatibility of mode-zero data") {
  const auto mesh = gen_rectangle(0, 1, 0, 1, 0.25);
  const Discretization disc(mesh);
  ModeProblem p = make_problem(0, Space::Y, [](Point) { return Vec3c{}; }, [](Point) { return cplx(1.0); });
  check_compatibility(disc, p);
  p.require_mean_zero_g = true;
  CHECK_THROWS_AS(check_compatibility(disc, p), InvalidArgument);
  ModeProblem q = make_problem(0, Space::Y, [](Point) { return Vec3c{}; }, [](Point x) { return cplx(x.z - 0.5); });
  q.require_mean_zero_g = true;
  CHECK_NOTHROW(check_compatibility(disc, q));
}

TEST_CASE("singular mode solves on the L-shape") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.2);
  const Discretization disc(d.mesh, d.corner.position);
  const auto data = builtin_rhs("band3");
  const ModalRhs rhs(disc, data.f, data.g, 3);
  for (Space s : {Space::X, Space::Y}) {
    auto basis = std::make_shared<const SingularBasis>(compute_basis(disc, d.corner, 1, s, {{1e-12}}));
    const ModeSolution sol = solve_mode_orthogonal(disc, ModeProblem{1, s, rhs.mode(1), false}, basis, {1e-12});
    CHECK(sol.diagnostics.orthogonality <= 1e-6);
    CHECK(std::abs(sol.c) > 0.0);

    auto basis2 = std::make_shared<const SingularBasis>(compute_basis(disc, d.corner, 2, s, {{1e-12}}));
    const ModeSolution zero = solve_mode_bordered(disc, ModeProblem{3, s, {}, false}, basis2);
    CHECK(zero.c == cplx(0.0));
    for (const auto& v : zero.regular.values) CHECK(norm2(v) == 0.0);
    CHECK_THROWS_AS(solve_mode_bordered(disc, ModeProblem{1, s, {}, false}, basis2), InvalidArgument);
  }
}

TEST_CASE("Fourier solve, synthesis and re-analysis") {
  const auto mesh = gen_rectangle(0, 1, 0, 1, 0.25);
  const Discretization disc(mesh);
  const auto data = builtin_rhs("band3");
  const ModalRhs rhs(disc, data.f, data.g, 3);
  const auto sol = solve_fourier(disc, {}, Space::X, rhs, {});
  REQUIRE(sol.modes.size() == 7);
  for (int k = 1; k <= 3; ++k) {
    const auto& a = sol.mode(k).regular.values;
    const auto& b = sol.mode(-k).regular.values;
    for (std::size_t v = 0; v < a.size(); ++v)
      for (int c = 0; c < 3; ++c) CHECK(b[v][c] == std::conj(a[v][c]));
  }
  // real data gives real fields
  for (const auto& v : synthesize(mesh, sol, 0.7))
    for (int c = 0; c < 3; ++c) CHECK(std::abs(v[c].imag()) < 1e-14);

  const auto samples = sample_3d(mesh, sol, 13);
  const auto modes = analyze_samples(samples, 3);
  const auto nodal = nodal_modes(mesh, sol);
  double worst = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
      worst = std::max(worst, std::sqrt(norm2(modes[i].values[v] - nodal[i].values[v])));
  CHECK(worst < 1e-12);
  CHECK_THROWS_AS(sol.mode(4), InvalidArgument);
}
