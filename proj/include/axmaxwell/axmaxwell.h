/* Axisymmetric static Maxwell solver with singular complements: C interface. */
#ifndef AXMAXWELL_H
#define AXMAXWELL_H

#include <stddef.h>

#if defined(_WIN32)
#define AXM_API __declspec(dllexport)
#else
#define AXM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum axm_status {
  AXM_OK = 0,
  AXM_ERR_INVALID = 1,   /* bad argument, malformed input, unsupported request */
  AXM_ERR_NUMERICAL = 2, /* non-convergence, breakdown, degenerate coupling */
  AXM_ERR_IO = 3,        /* file could not be read or written */
  AXM_ERR_INTERNAL = 4   /* anything else */
} axm_status;

typedef enum axm_field { AXM_ELECTRIC = 0, AXM_MAGNETIC = 1 } axm_field;

typedef struct axm_mesh axm_mesh;
typedef struct axm_basis axm_basis;
typedef struct axm_rhs axm_rhs;
typedef struct axm_solution axm_solution;

/* Message of the last failed call on this thread; empty when none. */
AXM_API const char* axm_last_error(void);
AXM_API const char* axm_version(void);

/* ---- meshes ---- */

AXM_API axm_status axm_mesh_rectangle(double rmin, double rmax, double zmin, double zmax, double h, axm_mesh** out);
/* [0, rmax] x [zmin, zmax] minus (rc, rmax] x (zc, zmax]; reentrant corner at (rc, zc). */
AXM_API axm_status axm_mesh_lshape(double rc, double zc, double rmax, double zmin, double zmax, double h,
                                   axm_mesh** out);
AXM_API axm_status axm_mesh_load(const char* path, axm_mesh** out);
AXM_API axm_status axm_mesh_save(const axm_mesh* mesh, const char* path);
AXM_API void axm_mesh_free(axm_mesh* mesh);

AXM_API axm_status axm_mesh_counts(const axm_mesh* mesh, size_t* vertices, size_t* triangles);
AXM_API axm_status axm_mesh_vertex(const axm_mesh* mesh, size_t index, double* r, double* z);
AXM_API double axm_mesh_h(const axm_mesh* mesh);

typedef struct axm_corner_info {
  int vertex;
  double r, z;
  double interior_angle;
  double alpha; /* pi / interior_angle */
} axm_corner_info;

AXM_API axm_status axm_mesh_corner_count(const axm_mesh* mesh, size_t* count);
AXM_API axm_status axm_mesh_corner(const axm_mesh* mesh, size_t index, axm_corner_info* out);

/* ---- special functions and singular bookkeeping ---- */

AXM_API axm_status axm_find_beta(double* beta);
/* *singular is set to 1 and *nu to the degree when the cone of this aperture is singular. */
AXM_API axm_status axm_find_nu(double aperture, double* nu, int* singular);

typedef struct axm_cone {
  double z;        /* vertex on the axis */
  double aperture; /* radians */
} axm_cone;

AXM_API axm_status axm_singular_dimension(const axm_mesh* mesh, const axm_cone* cones, size_t n_cones, int k,
                                          axm_field field, int* dimension);

/* ---- solver options ---- */

typedef struct axm_options {
  double tol;                /* relative residual of the conjugate gradient solves */
  size_t max_iterations;     /* 0: 20 times the number of unknowns */
  unsigned threads;          /* 0: AXM_NUM_THREADS or 1 */
  int transpose_pairing;     /* bordered system coupled with y^T instead of y^H */
  int direct_coupling;       /* couplings of |k| > 2 integrated directly instead of shifted from mode 2 */
  int direct_high_modes;     /* solve |k| > 2 with their own basis instead of the bordered system */
  int require_mean_zero_g;   /* reject mode-0 data whose g has nonzero mean */
} axm_options;

AXM_API void axm_options_default(axm_options* opts);

/* ---- singular bases ---- */

typedef struct axm_solve_info {
  size_t iterations;
  double relative_residual;
  size_t unknowns;
} axm_solve_info;

/* Needs a mesh with exactly one reentrant corner; |k| <= 2 unless direct_high_modes is set. */
AXM_API axm_status axm_basis_compute(const axm_mesh* mesh, int k, axm_field field, const axm_options* opts,
                                     axm_basis** out);
AXM_API void axm_basis_free(axm_basis* basis);
AXM_API axm_status axm_basis_info(const axm_basis* basis, axm_solve_info* out);
/* Nodal total field, 6 doubles per vertex: (re, im) of r, theta, z. The principal part is omitted at the corner. */
AXM_API axm_status axm_basis_nodal(const axm_basis* basis, double* out, size_t len);
/* VTK with the nodal total, the regular part, and the principal part at cell centroids. */
AXM_API axm_status axm_basis_write_vtk(const axm_basis* basis, const char* path);

/* ---- right-hand sides ---- */

/* Real 3D data at (r, theta, z): cylindrical f[3] and scalar *g. */
typedef void (*axm_rhs_fn)(double r, double theta, double z, double* f, double* g, void* user);

/* Names: zero, bump, bump-m1, bump-m3, band3. */
AXM_API axm_status axm_rhs_builtin(const char* name, axm_rhs** out);
/* CSV with columns r,theta,z,f_r,f_theta,f_z,g on a tensor grid. */
AXM_API axm_status axm_rhs_tabulated(const char* path, axm_rhs** out);
/* The callback must stay valid, and be safe to call concurrently, while the handle is used. */
AXM_API axm_status axm_rhs_callback(axm_rhs_fn fn, void* user, axm_rhs** out);
AXM_API void axm_rhs_free(axm_rhs* rhs);

/* ---- Fourier solutions ---- */

AXM_API axm_status axm_solve(const axm_mesh* mesh, const axm_rhs* rhs, int order, axm_field field,
                             const axm_options* opts, axm_solution** out);
AXM_API void axm_solution_free(axm_solution* sol);
AXM_API int axm_solution_order(const axm_solution* sol);

typedef struct axm_mode_info {
  int k;
  double c_re, c_im;             /* singular coefficient, 0 without a corner */
  size_t iterations;
  double relative_residual;
  size_t unknowns;
  double c_curl_only_re, c_curl_only_im;
  double orthogonality;          /* a posteriori, modes with their own basis */
  double schur_re, schur_im;     /* bordered modes */
  double c_transpose_re, c_transpose_im;
  int bordered;
} axm_mode_info;

AXM_API axm_status axm_solution_mode_info(const axm_solution* sol, int k, axm_mode_info* out);
/* Nodal total of mode k, 6 doubles per vertex as for axm_basis_nodal. */
AXM_API axm_status axm_solution_mode_nodal(const axm_solution* sol, int k, double* out, size_t len);
/* Field at azimuth theta, 6 doubles per vertex. */
AXM_API axm_status axm_solution_synthesize(const axm_solution* sol, double theta, double* out, size_t len);

AXM_API axm_status axm_solution_write_mode_vtk(const axm_solution* sol, int k, const char* path);
/* Per-mode table: k, C^k, iterations, residuals and diagnostics. */
AXM_API axm_status axm_solution_write_summary_csv(const axm_solution* sol, const char* path);
/* Revolved volume grid with theta_samples azimuthal copies. */
AXM_API axm_status axm_solution_write_volume_vtk(const axm_solution* sol, int theta_samples, const char* path);

/* ---- convergence on the meridian rectangle [0, 1] x [0, 1] ---- */

/* Errors of the smooth manufactured field of mode k for each mesh size. */
AXM_API axm_status axm_convergence(int k, axm_field field, const double* h, size_t levels, const axm_options* opts,
                                   double* l2_error, double* energy_error);

/* ---- verification suite ---- */

typedef struct axm_check_result {
  int id;
  int passed;
  double seconds;
  char name[64];
  char detail[1024];
} axm_check_result;

AXM_API size_t axm_verify_count(void);
/* index in [0, axm_verify_count()). */
AXM_API axm_status axm_verify_run(size_t index, const axm_options* opts, axm_check_result* out);

#ifdef __cplusplus
}
#endif

#endif
