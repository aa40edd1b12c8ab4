// Command-line driver over the C interface.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axmaxwell/axmaxwell.h"

namespace {

/// Everything a run needs; filled from flags and an optional key=value file.
struct RunConfig {
  std::string domain = "lshape";
  std::string mesh_file;
  double h = 0.1;
  double rmin = 0.0, rmax = 2.0, zmin = 0.0, zmax = 2.0;
  double rc = 1.0, zc = 1.0;
  int order = 5;
  std::string field = "magnetic";
  std::string rhs = "band3";
  std::string rhs_file;
  double tol = 1e-10;
  std::size_t max_iterations = 0;
  unsigned threads = 0;
  std::string pairing = "conjugate";
  std::string coupling = "shift";
  bool direct_high_modes = false;
  bool mean_zero_g = false;
  std::string out_dir = ".";
  std::string config;
};

/// Failure carrying the process exit code.
struct Failure {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void raise(axm_status s) {
  switch (s) {
    case AXM_ERR_INVALID: throw Failure{1, "invalid", axm_last_error()};
    case AXM_ERR_NUMERICAL: throw Failure{2, "numerical", axm_last_error()};
    case AXM_ERR_IO: throw Failure{3, "io", axm_last_error()};
    default: throw Failure{2, "internal", axm_last_error()};
  }
}

void check(axm_status s) {
  if (s != AXM_OK) raise(s);
}

void add_domain_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--domain", c.domain, "Meridian domain")->check(CLI::IsMember({"rectangle", "lshape"}))->capture_default_str();
  sub->add_option("--mesh", c.mesh_file, "Load this mesh file instead of generating one");
  sub->add_option("--h", c.h, "Mesh size")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--rmin", c.rmin, "Inner radius (rectangle)")->capture_default_str();
  sub->add_option("--rmax", c.rmax, "Outer radius")->capture_default_str();
  sub->add_option("--zmin", c.zmin, "Lower height")->capture_default_str();
  sub->add_option("--zmax", c.zmax, "Upper height")->capture_default_str();
  sub->add_option("--rc", c.rc, "Radius of the reentrant corner (lshape)")->capture_default_str();
  sub->add_option("--zc", c.zc, "Height of the reentrant corner (lshape)")->capture_default_str();
}

void add_solver_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tol", c.tol, "Relative residual of the iterative solves")->capture_default_str();
  sub->add_option("--max-iterations", c.max_iterations, "Iteration cap, 0 for 20 times the unknowns")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads, 0 for AXM_NUM_THREADS or 1")->capture_default_str();
  sub->add_option("--pairing", c.pairing, "Coupling row of the bordered system")
      ->check(CLI::IsMember({"conjugate", "transpose"}))
      ->capture_default_str();
  sub->add_option("--coupling", c.coupling, "Couplings of |k| > 2 shifted from mode 2 or integrated directly")
      ->check(CLI::IsMember({"shift", "direct"}))
      ->capture_default_str();
  sub->add_flag("--direct-high-modes", c.direct_high_modes, "Compute a basis for every |k| > 2 instead of bordering");
}

void add_field_option(CLI::App* sub, RunConfig& c) {
  sub->add_option("--field", c.field, "Field kind")->check(CLI::IsMember({"electric", "magnetic"}))->capture_default_str();
}

void add_rhs_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--order", c.order, "Fourier truncation order N")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--rhs", c.rhs, "Built-in data: zero, bump, bump-m1, bump-m3, band3")->capture_default_str();
  sub->add_option("--rhs-file", c.rhs_file, "Tabulated data CSV (r,theta,z,f_r,f_theta,f_z,g); overrides --rhs");
  sub->add_flag("--mean-zero-g", c.mean_zero_g, "Reject mode-0 data whose g has nonzero mean");
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--config", c.config, "File of key=value lines; flags given on the command line win");
  sub->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
}

/// Applies key=value lines to options not set on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
  if (!std::filesystem::exists(path)) throw Failure{3, "io", "cannot open config file '" + path + "'"};
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::Error& e) {
    throw Failure{1, "usage", std::string("config file: ") + e.what()};
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + item.name);
    } catch (const CLI::OptionNotFound&) {
      throw Failure{1, "usage", "config file: unknown key '" + item.name + "'"};
    }
    if (item.name == "config") throw Failure{1, "usage", "config file: nested config is not supported"};
    if (opt->count() > 0) continue;
    try {
      for (const auto& v : item.inputs) opt->add_result(v);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw Failure{1, "usage", "config file: key '" + item.name + "': " + e.what()};
    }
  }
}

axm_options solver_options(const RunConfig& c) {
  axm_options o;
  axm_options_default(&o);
  o.tol = c.tol;
  o.max_iterations = c.max_iterations;
  o.threads = c.threads;
  o.transpose_pairing = c.pairing == "transpose";
  o.direct_coupling = c.coupling == "direct";
  o.direct_high_modes = c.direct_high_modes;
  o.require_mean_zero_g = c.mean_zero_g;
  return o;
}

axm_field field_of(const RunConfig& c) { return c.field == "electric" ? AXM_ELECTRIC : AXM_MAGNETIC; }

struct MeshHandle {
  axm_mesh* m = nullptr;
  ~MeshHandle() { axm_mesh_free(m); }
};

void make_mesh(const RunConfig& c, MeshHandle& out) {
  if (!c.mesh_file.empty())
    check(axm_mesh_load(c.mesh_file.c_str(), &out.m));
  else if (c.domain == "rectangle")
    check(axm_mesh_rectangle(c.rmin, c.rmax, c.zmin, c.zmax, c.h, &out.m));
  else
    check(axm_mesh_lshape(c.rc, c.zc, c.rmax, c.zmin, c.zmax, c.h, &out.m));
}

std::string out_path(const RunConfig& c, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  if (ec) throw Failure{3, "io", "cannot create output directory '" + c.out_dir + "': " + ec.message()};
  return (std::filesystem::path(c.out_dir) / name).string();
}

void report_mesh(const axm_mesh* m) {
  std::size_t nv = 0, nt = 0, nc = 0;
  check(axm_mesh_counts(m, &nv, &nt));
  check(axm_mesh_corner_count(m, &nc));
  std::printf("mesh vertices=%zu triangles=%zu h=%.6g reentrant_corners=%zu\n", nv, nt, axm_mesh_h(m), nc);
  for (std::size_t i = 0; i < nc; ++i) {
    axm_corner_info ci;
    check(axm_mesh_corner(m, i, &ci));
    std::printf("corner vertex=%d r=%.6g z=%.6g angle=%.6f alpha=%.6f\n", ci.vertex, ci.r, ci.z, ci.interior_angle,
                ci.alpha);
  }
}

struct SolutionHandle {
  axm_rhs* rhs = nullptr;
  axm_solution* sol = nullptr;
  ~SolutionHandle() {
    axm_solution_free(sol);
    axm_rhs_free(rhs);
  }
};

void run_solve(const RunConfig& c, const axm_mesh* m, SolutionHandle& h) {
  if (!c.rhs_file.empty())
    check(axm_rhs_tabulated(c.rhs_file.c_str(), &h.rhs));
  else
    check(axm_rhs_builtin(c.rhs.c_str(), &h.rhs));
  const axm_options o = solver_options(c);
  check(axm_solve(m, h.rhs, c.order, field_of(c), &o, &h.sol));
}

int cmd_meshgen(const RunConfig& c, const std::string& out) {
  MeshHandle m;
  make_mesh(c, m);
  const std::string path = out_path(c, out);
  check(axm_mesh_save(m.m, path.c_str()));
  report_mesh(m.m);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_singular(const RunConfig& c, int k, std::string out) {
  MeshHandle m;
  make_mesh(c, m);
  const axm_options o = solver_options(c);
  axm_basis* b = nullptr;
  check(axm_basis_compute(m.m, k, field_of(c), &o, &b));
  struct Free {
    axm_basis* b;
    ~Free() { axm_basis_free(b); }
  } guard{b};
  if (out.empty()) out = "singular_k" + std::to_string(k) + "_" + c.field + ".vtk";
  const std::string path = out_path(c, out);
  check(axm_basis_write_vtk(b, path.c_str()));
  axm_solve_info si;
  check(axm_basis_info(b, &si));
  std::printf("basis k=%d field=%s unknowns=%zu iterations=%zu relative_residual=%.3e\n", k, c.field.c_str(),
              si.unknowns, si.iterations, si.relative_residual);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_solve(const RunConfig& c) {
  MeshHandle m;
  make_mesh(c, m);
  SolutionHandle s;
  run_solve(c, m.m, s);
  std::printf("%4s %14s %14s %8s %11s\n", "k", "Re C", "Im C", "iters", "residual");
  for (int k = -c.order; k <= c.order; ++k) {
    axm_mode_info mi;
    check(axm_solution_mode_info(s.sol, k, &mi));
    std::printf("%4d %14.6e %14.6e %8zu %11.3e%s\n", k, mi.c_re, mi.c_im, mi.iterations, mi.relative_residual,
                mi.bordered ? " bordered" : "");
    const std::string vtk = out_path(c, "mode_" + std::to_string(k) + ".vtk");
    check(axm_solution_write_mode_vtk(s.sol, k, vtk.c_str()));
  }
  const std::string csv = out_path(c, "summary.csv");
  check(axm_solution_write_summary_csv(s.sol, csv.c_str()));
  std::printf("wrote %s and %d mode files\n", csv.c_str(), 2 * c.order + 1);
  return 0;
}

int cmd_synthesize(const RunConfig& c, int theta_samples, const std::string& out) {
  MeshHandle m;
  make_mesh(c, m);
  SolutionHandle s;
  run_solve(c, m.m, s);
  const std::string path = out_path(c, out);
  check(axm_solution_write_volume_vtk(s.sol, theta_samples, path.c_str()));
  std::printf("wrote %s (%d azimuthal slices, modes %d..%d)\n", path.c_str(), theta_samples, -c.order, c.order);
  return 0;
}

int cmd_convergence(const RunConfig& c, int k, int levels, double h0, const std::string& out) {
  std::vector<double> hs, l2(static_cast<std::size_t>(levels)), en(static_cast<std::size_t>(levels));
  for (int i = 0; i < levels; ++i) hs.push_back(h0 / std::pow(2.0, i));
  const axm_options o = solver_options(c);
  check(axm_convergence(k, field_of(c), hs.data(), hs.size(), &o, l2.data(), en.data()));

  std::string csv = "h,l2_error,energy_error,l2_rate,energy_rate\n";
  auto g17 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double rl = i ? std::log(l2[i - 1] / l2[i]) / std::log(hs[i - 1] / hs[i]) : NAN;
    const double re = i ? std::log(en[i - 1] / en[i]) / std::log(hs[i - 1] / hs[i]) : NAN;
    csv += g17(hs[i]) + "," + g17(l2[i]) + "," + g17(en[i]) + "," + g17(rl) + "," + g17(re) + "\n";
    std::printf("h=%-8.4g l2=%.4e energy=%.4e", hs[i], l2[i], en[i]);
    if (i) std::printf(" rates %.3f %.3f", rl, re);
    std::printf("\n");
  }
  // least-squares slopes over all levels
  if (hs.size() >= 2) {
    auto slope = [&](const std::vector<double>& e) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double n = static_cast<double>(hs.size());
      for (std::size_t i = 0; i < hs.size(); ++i) {
        const double x = std::log(hs[i]), y = std::log(e[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
      }
      return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    std::printf("fitted rates: l2=%.3f energy=%.3f\n", slope(l2), slope(en));
  }
  const std::string path = out_path(c, out);
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Failure{3, "io", "cannot write '" + path + "'"};
  const bool ok = std::fwrite(csv.data(), 1, csv.size(), f) == csv.size();
  if (std::fclose(f) != 0 || !ok) throw Failure{3, "io", "write failed for '" + path + "'"};
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_verify(const RunConfig& c, const std::vector<int>& only) {
  const axm_options o = solver_options(c);
  int failed = 0, ran = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < axm_verify_count(); ++i) {
    axm_check_result r;
    // run only the requested ids
    if (!only.empty()) {
      bool want = false;
      for (int id : only) want |= static_cast<std::size_t>(id) == i + 1;
      if (!want) continue;
    }
    check(axm_verify_run(i, &o, &r));
    ++ran;
    total += r.seconds;
    if (!r.passed) ++failed;
    std::printf("%s %2d %s: %s [%.2f s]\n", r.passed ? "PASS" : "FAIL", r.id, r.name, r.detail, r.seconds);
    std::fflush(stdout);
  }
  std::printf("%d checks, %d failed, %.1f s\n", ran, failed, total);
  if (failed) throw Failure{2, "verify", std::to_string(failed) + " check(s) failed"};
  return 0;
}

std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric static Maxwell solver with singular complements", "axm"};
  app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  RunConfig cfg;

  auto* meshgen = app.add_subcommand("meshgen", "Generate a meridian mesh and report its reentrant corners");
  std::string mesh_out = "mesh.txt";
  add_common(meshgen, cfg);
  add_domain_options(meshgen, cfg);
  meshgen->add_option("--out", mesh_out, "Mesh file name inside the output directory")->capture_default_str();

  auto* singular = app.add_subcommand("singular", "Compute one singular basis function and export it as VTK");
  int basis_k = 1;
  std::string basis_out;
  add_common(singular, cfg);
  add_domain_options(singular, cfg);
  add_field_option(singular, cfg);
  add_solver_options(singular, cfg);
  singular->add_option("--k", basis_k, "Fourier mode")->capture_default_str();
  singular->add_option("--out", basis_out, "VTK file name (default singular_k<K>_<field>.vtk)");

  auto* solve = app.add_subcommand("solve", "Solve every mode -N..N; per-mode VTK and a summary CSV");
  add_common(solve, cfg);
  add_domain_options(solve, cfg);
  add_field_option(solve, cfg);
  add_rhs_options(solve, cfg);
  add_solver_options(solve, cfg);

  auto* synth = app.add_subcommand("synthesize", "Solve and export the 3D field on a revolved grid");
  int theta_samples = 32;
  std::string synth_out = "field_3d.vtk";
  add_common(synth, cfg);
  add_domain_options(synth, cfg);
  add_field_option(synth, cfg);
  add_rhs_options(synth, cfg);
  add_solver_options(synth, cfg);
  synth->add_option("--theta-samples", theta_samples, "Azimuthal slices")->check(CLI::Range(3, 100000))->capture_default_str();
  synth->add_option("--out", synth_out, "VTK file name")->capture_default_str();

  auto* conv = app.add_subcommand("convergence", "Errors of a smooth manufactured field on [0,1]x[0,1] under refinement");
  int conv_k = 1, levels = 3;
  double h0 = 0.2;
  std::string conv_out = "convergence.csv";
  add_common(conv, cfg);
  add_field_option(conv, cfg);
  add_solver_options(conv, cfg);
  conv->add_option("--k", conv_k, "Fourier mode")->capture_default_str();
  conv->add_option("--levels", levels, "Number of meshes, halving h each time")->check(CLI::Range(1, 8))->capture_default_str();
  conv->add_option("--h0", h0, "Coarsest mesh size")->check(CLI::PositiveNumber)->capture_default_str();
  conv->add_option("--out", conv_out, "CSV file name")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the property and acceptance checks; exit 0 iff all pass");
  std::vector<int> only;
  verify->add_option("--config", cfg.config, "File of key=value lines; flags given on the command line win");
  verify->add_option("--threads", cfg.threads, "Worker threads, 0 for AXM_NUM_THREADS or 1")->capture_default_str();
  verify->add_option("--only", only, "Run only these check ids")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: usage: %s\n", one_line(e.what()).c_str());
    return 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!cfg.config.empty()) apply_config(sub, cfg.config);
    if (sub == meshgen) return cmd_meshgen(cfg, mesh_out);
    if (sub == singular) return cmd_singular(cfg, basis_k, basis_out);
    if (sub == solve) return cmd_solve(cfg);
    if (sub == synth) return cmd_synthesize(cfg, theta_samples, synth_out);
    if (sub == conv) return cmd_convergence(cfg, conv_k, levels, h0, conv_out);
    if (sub == verify) return cmd_verify(cfg, only);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s: %s\n", f.kind.c_str(), one_line(f.message).c_str());
    return f.code;
  }
  return 1;
}
