#include "axmaxwell/axmaxwell.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <thread>
#include <vector>

#include "axm/error.hpp"
#include "axm/io.hpp"
#include "axm/manufactured.hpp"
#include "axm/mesh.hpp"
#include "axm/singular.hpp"
#include "axm/solver.hpp"
#include "axm/special.hpp"
#include "axm/verify.hpp"

struct axm_mesh {
  axm::TriangleMesh mesh;
  std::vector<axm::CornerDescriptor> corners;
};

struct axm_basis {
  axm::TriangleMesh mesh;
  axm::SingularBasis basis;
};

struct axm_rhs {
  axm::RhsData data;
};

struct axm_solution {
  axm::TriangleMesh mesh;
  axm::FourierSolution sol;
  std::vector<int> bordered;  // per mode, k = -N..N
};

namespace {

thread_local std::string g_last_error;

axm_status fail(axm_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
axm_status guard(F&& body) {
  try {
    body();
    return AXM_OK;
  } catch (const axm::InvalidArgument& e) {
    return fail(AXM_ERR_INVALID, e.what());
  } catch (const axm::NumericalError& e) {
    return fail(AXM_ERR_NUMERICAL, e.what());
  } catch (const axm::IoError& e) {
    return fail(AXM_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(AXM_ERR_INVALID, e.what());
  } catch (const std::out_of_range& e) {
    return fail(AXM_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AXM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AXM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AXM_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool cond, const char* msg) {
  if (!cond) throw axm::InvalidArgument(msg);
}

axm::Space to_space(axm_field f) {
  require(f == AXM_ELECTRIC || f == AXM_MAGNETIC, "field must be electric or magnetic");
  return f == AXM_ELECTRIC ? axm::Space::X : axm::Space::Y;
}

axm_options resolve(const axm_options* opts) {
  axm_options o;
  axm_options_default(&o);
  if (opts) o = *opts;
  if (o.threads == 0) {
    o.threads = 1;
    if (const char* env = std::getenv("AXM_NUM_THREADS")) {
      char* end = nullptr;
      const long n = std::strtol(env, &end, 10);
      require(end != env && *end == '\0' && n >= 1 && n <= 1024, "AXM_NUM_THREADS must be a positive integer");
      o.threads = static_cast<unsigned>(n);
    }
  }
  require(o.tol > 0.0 && o.tol < 1.0, "tolerance must lie in (0, 1)");
  return o;
}

axm::CgOptions cg_of(const axm_options& o) {
  axm::CgOptions cg;
  cg.tol = o.tol;
  cg.max_iterations = o.max_iterations;
  return cg;
}

void copy_out(const std::vector<axm::Vec3c>& values, double* out, std::size_t len) {
  require(out != nullptr, "output buffer is null");
  require(len >= 6 * values.size(), "output buffer too small: need 6 doubles per vertex");
  for (std::size_t v = 0; v < values.size(); ++v)
    for (int c = 0; c < 3; ++c) {
      out[6 * v + 2 * c] = values[v][c].real();
      out[6 * v + 2 * c + 1] = values[v][c].imag();
    }
}

std::optional<axm::Point> singular_point(const axm_mesh& m) {
  if (m.corners.empty()) return std::nullopt;
  return m.corners.front().position;
}

axm_mesh* classified(axm::TriangleMesh mesh) {
  auto cls = axm::classify_boundary(mesh);
  return new axm_mesh{std::move(cls.mesh), std::move(cls.corners)};
}

void copy_string(char* dst, std::size_t cap, const std::string& s) {
  const std::size_t n = std::min(cap - 1, s.size());
  std::memcpy(dst, s.data(), n);
  dst[n] = '\0';
}

}  // namespace

extern "C" {

const char* axm_last_error(void) { return g_last_error.c_str(); }
const char* axm_version(void) { return "1.0.0"; }

axm_status axm_mesh_rectangle(double rmin, double rmax, double zmin, double zmax, double h, axm_mesh** out) {
  return guard([&] {
    require(out, "output handle is null");
    *out = classified(axm::gen_rectangle(rmin, rmax, zmin, zmax, h));
  });
}

axm_status axm_mesh_lshape(double rc, double zc, double rmax, double zmin, double zmax, double h, axm_mesh** out) {
  return guard([&] {
    require(out, "output handle is null");
    auto dom = axm::gen_lshape(rc, zc, rmax, zmin, zmax, h);
    *out = new axm_mesh{std::move(dom.mesh), {dom.corner}};
  });
}

axm_status axm_mesh_load(const char* path, axm_mesh** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = classified(axm::load_mesh(path));
  });
}

axm_status axm_mesh_save(const axm_mesh* mesh, const char* path) {
  return guard([&] {
    require(mesh && path, "null argument");
    axm::save_mesh(mesh->mesh, path);
  });
}

void axm_mesh_free(axm_mesh* mesh) { delete mesh; }

axm_status axm_mesh_counts(const axm_mesh* mesh, size_t* vertices, size_t* triangles) {
  return guard([&] {
    require(mesh, "null mesh");
    if (vertices) *vertices = mesh->mesh.num_vertices();
    if (triangles) *triangles = mesh->mesh.num_triangles();
  });
}

axm_status axm_mesh_vertex(const axm_mesh* mesh, size_t index, double* r, double* z) {
  return guard([&] {
    require(mesh && r && z, "null argument");
    require(index < mesh->mesh.num_vertices(), "vertex index out of range");
    const auto p = mesh->mesh.vertex(static_cast<int>(index));
    *r = p.r;
    *z = p.z;
  });
}

double axm_mesh_h(const axm_mesh* mesh) { return mesh ? mesh->mesh.h() : 0.0; }

axm_status axm_mesh_corner_count(const axm_mesh* mesh, size_t* count) {
  return guard([&] {
    require(mesh && count, "null argument");
    *count = mesh->corners.size();
  });
}

axm_status axm_mesh_corner(const axm_mesh* mesh, size_t index, axm_corner_info* out) {
  return guard([&] {
    require(mesh && out, "null argument");
    require(index < mesh->corners.size(), "corner index out of range");
    const auto& c = mesh->corners[index];
    *out = {c.vertex, c.position.r, c.position.z, c.interior_angle, c.alpha};
  });
}

axm_status axm_find_beta(double* beta) {
  return guard([&] {
    require(beta, "null argument");
    *beta = axm::special::find_beta();
  });
}

axm_status axm_find_nu(double aperture, double* nu, int* singular) {
  return guard([&] {
    require(nu && singular, "null argument");
    const auto v = axm::special::find_nu(aperture);
    *singular = v.has_value() ? 1 : 0;
    *nu = v.value_or(0.0);
  });
}

axm_status axm_singular_dimension(const axm_mesh* mesh, const axm_cone* cones, size_t n_cones, int k,
                                  axm_field field, int* dimension) {
  return guard([&] {
    require(mesh && dimension, "null argument");
    require(n_cones == 0 || cones, "null cone array");
    std::vector<axm::ConicalDescriptor> cs;
    for (size_t i = 0; i < n_cones; ++i) cs.push_back({axm::Point{0.0, cones[i].z}, cones[i].aperture});
    *dimension = axm::singular_dimension(mesh->corners, cs, k, to_space(field));
  });
}

void axm_options_default(axm_options* opts) {
  if (!opts) return;
  *opts = axm_options{};
  opts->tol = 1e-10;
}

axm_status axm_basis_compute(const axm_mesh* mesh, int k, axm_field field, const axm_options* opts,
                             axm_basis** out) {
  return guard([&] {
    require(mesh && out, "null argument");
    require(mesh->corners.size() == 1, "a singular basis needs a mesh with exactly one reentrant corner");
    const axm_options o = resolve(opts);
    const axm::Discretization disc(mesh->mesh, singular_point(*mesh));
    axm::BasisOptions bo;
    bo.cg = cg_of(o);
    bo.allow_any_k = o.direct_high_modes != 0;
    auto b = axm::compute_basis(disc, mesh->corners.front(), k, to_space(field), bo);
    *out = new axm_basis{mesh->mesh, std::move(b)};
  });
}

void axm_basis_free(axm_basis* basis) { delete basis; }

axm_status axm_basis_info(const axm_basis* basis, axm_solve_info* out) {
  return guard([&] {
    require(basis && out, "null argument");
    const auto& d = basis->basis.diagnostics;
    *out = {d.iterations, d.relative_residual, d.unknowns};
  });
}

axm_status axm_basis_nodal(const axm_basis* basis, double* out, size_t len) {
  return guard([&] {
    require(basis, "null basis");
    copy_out(axm::basis_nodal(basis->mesh, basis->basis).values, out, len);
  });
}

axm_status axm_basis_write_vtk(const axm_basis* basis, const char* path) {
  return guard([&] {
    require(basis && path, "null argument");
    const auto& mesh = basis->mesh;
    std::vector<axm::Vec3c> principal(mesh.num_triangles());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      const auto p = mesh.triangle_points(static_cast<int>(t));
      principal[t] = axm::eval_principal(basis->basis.principal, (1.0 / 3.0) * (p[0] + p[1] + p[2]));
    }
    axm::write_vtk(mesh,
                   {{"basis", axm::basis_nodal(mesh, basis->basis).values}, {"regular", basis->basis.regular.values}},
                   path, {{"principal", std::move(principal)}});
  });
}

axm_status axm_rhs_builtin(const char* name, axm_rhs** out) {
  return guard([&] {
    require(name && out, "null argument");
    *out = new axm_rhs{axm::builtin_rhs(name)};
  });
}

axm_status axm_rhs_tabulated(const char* path, axm_rhs** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new axm_rhs{axm::tabulated_rhs(path)};
  });
}

axm_status axm_rhs_callback(axm_rhs_fn fn, void* user, axm_rhs** out) {
  return guard([&] {
    require(fn && out, "null argument");
    axm::RhsData d;
    d.name = "callback";
    d.f = [fn, user](double r, double t, double z) {
      double f[3] = {0, 0, 0}, g = 0;
      fn(r, t, z, f, &g, user);
      return axm::Vector3d{f[0], f[1], f[2]};
    };
    d.g = [fn, user](double r, double t, double z) {
      double f[3] = {0, 0, 0}, g = 0;
      fn(r, t, z, f, &g, user);
      return g;
    };
    *out = new axm_rhs{std::move(d)};
  });
}

void axm_rhs_free(axm_rhs* rhs) { delete rhs; }

axm_status axm_solve(const axm_mesh* mesh, const axm_rhs* rhs, int order, axm_field field, const axm_options* opts,
                     axm_solution** out) {
  return guard([&] {
    require(mesh && rhs && out, "null argument");
    require(order >= 0, "truncation order must be non-negative");
    const axm_options o = resolve(opts);
    const axm::Discretization disc(mesh->mesh, singular_point(*mesh));
    const axm::ModalRhs modal(disc, rhs->data.f, rhs->data.g, order);
    axm::FourierOptions fo;
    fo.bordered.cg = cg_of(o);
    fo.bordered.pairing = o.transpose_pairing ? axm::Pairing::Transpose : axm::Pairing::Conjugate;
    fo.bordered.coupling = o.direct_coupling ? axm::CouplingPath::Direct : axm::CouplingPath::Shift;
    fo.threads = o.threads;
    fo.direct_high_modes = o.direct_high_modes != 0;
    fo.require_mean_zero_g = o.require_mean_zero_g != 0;
    auto sol = axm::solve_fourier(disc, mesh->corners, to_space(field), modal, fo);
    std::vector<int> bordered;
    for (int k = -order; k <= order; ++k)
      bordered.push_back(!mesh->corners.empty() && std::abs(k) > 2 && !fo.direct_high_modes ? 1 : 0);
    *out = new axm_solution{mesh->mesh, std::move(sol), std::move(bordered)};
  });
}

void axm_solution_free(axm_solution* sol) { delete sol; }

int axm_solution_order(const axm_solution* sol) { return sol ? sol->sol.order : -1; }

axm_status axm_solution_mode_info(const axm_solution* sol, int k, axm_mode_info* out) {
  return guard([&] {
    require(sol && out, "null argument");
    const auto& m = sol->sol.mode(k);
    const auto& d = m.diagnostics;
    *out = axm_mode_info{};
    out->k = k;
    out->c_re = m.c.real();
    out->c_im = m.c.imag();
    out->iterations = d.iterations;
    out->relative_residual = d.relative_residual;
    out->unknowns = d.unknowns;
    out->c_curl_only_re = d.c_curl_only.real();
    out->c_curl_only_im = d.c_curl_only.imag();
    out->orthogonality = d.orthogonality;
    out->schur_re = d.schur.real();
    out->schur_im = d.schur.imag();
    out->c_transpose_re = d.c_transpose.real();
    out->c_transpose_im = d.c_transpose.imag();
    out->bordered = sol->bordered[static_cast<std::size_t>(k + sol->sol.order)];
  });
}

axm_status axm_solution_mode_nodal(const axm_solution* sol, int k, double* out, size_t len) {
  return guard([&] {
    require(sol, "null solution");
    copy_out(axm::mode_nodal(sol->mesh, sol->sol.mode(k)).values, out, len);
  });
}

axm_status axm_solution_synthesize(const axm_solution* sol, double theta, double* out, size_t len) {
  return guard([&] {
    require(sol, "null solution");
    copy_out(axm::synthesize(sol->mesh, sol->sol, theta), out, len);
  });
}

axm_status axm_solution_write_mode_vtk(const axm_solution* sol, int k, const char* path) {
  return guard([&] {
    require(sol && path, "null argument");
    const auto& m = sol->sol.mode(k);
    std::vector<axm::NamedField> fields{{"total", axm::mode_nodal(sol->mesh, m).values},
                                        {"regular", m.regular.values}};
    axm::write_vtk(sol->mesh, fields, path);
  });
}

axm_status axm_solution_write_summary_csv(const axm_solution* sol, const char* path) {
  return guard([&] {
    require(sol && path, "null argument");
    axm::Table t;
    t.header = {"k",          "c_re",          "c_im",          "iterations",     "relative_residual",
                "unknowns",   "c_curl_only_re", "c_curl_only_im", "orthogonality", "schur_re",
                "schur_im",   "c_transpose_re", "c_transpose_im", "bordered"};
    for (int k = -sol->sol.order; k <= sol->sol.order; ++k) {
      axm_mode_info mi;
      if (axm_solution_mode_info(sol, k, &mi) != AXM_OK) throw axm::InvalidArgument(g_last_error);
      t.rows.push_back({static_cast<double>(k), mi.c_re, mi.c_im, static_cast<double>(mi.iterations),
                        mi.relative_residual, static_cast<double>(mi.unknowns), mi.c_curl_only_re, mi.c_curl_only_im,
                        mi.orthogonality, mi.schur_re, mi.schur_im, mi.c_transpose_re, mi.c_transpose_im,
                        static_cast<double>(mi.bordered)});
    }
    axm::write_csv(t, path);
  });
}

axm_status axm_solution_write_volume_vtk(const axm_solution* sol, int theta_samples, const char* path) {
  return guard([&] {
    require(sol && path, "null argument");
    require(theta_samples >= 3, "need at least 3 theta samples");
    axm::write_volume_vtk(sol->mesh, axm::sample_3d(sol->mesh, sol->sol, theta_samples), "field", path);
  });
}

axm_status axm_convergence(int k, axm_field field, const double* h, size_t levels, const axm_options* opts,
                           double* l2_error, double* energy_error) {
  return guard([&] {
    require(h && l2_error && energy_error, "null argument");
    const axm_options o = resolve(opts);
    const axm::Space space = to_space(field);
    const axm::ManufacturedField mf(k, space);
    for (size_t i = 0; i < levels; ++i) {
      const axm::Discretization disc(axm::gen_rectangle(0.0, 1.0, 0.0, 1.0, h[i]));
      const auto pb = axm::make_problem(
          k, space, [&](axm::Point p) { return mf.curl(p); }, [&](axm::Point p) { return mf.div(p); });
      const auto sol = axm::solve_mode_regular(disc, pb, cg_of(o));
      const auto e = axm::error_norms(disc, axm::p1_evaluator(disc, sol.regular, k), mf.evaluator());
      l2_error[i] = e.l2;
      energy_error[i] = e.energy;
    }
  });
}

size_t axm_verify_count(void) { return axm::verify::all_checks().size(); }

axm_status axm_verify_run(size_t index, const axm_options* opts, axm_check_result* out) {
  return guard([&] {
    require(out, "null argument");
    const auto& checks = axm::verify::all_checks();
    require(index < checks.size(), "check index out of range");
    axm::verify::Options vo;
    vo.threads = resolve(opts).threads;
    const auto r = checks[index].run(vo);
    out->id = r.id;
    out->passed = r.passed ? 1 : 0;
    out->seconds = r.seconds;
    copy_string(out->name, sizeof out->name, r.name);
    copy_string(out->detail, sizeof out->detail, r.detail);
  });
}

}  // extern "C"
