#pragma once

#include <string>
#include <vector>

#include "axm/femcore.hpp"
#include "axm/mesh.hpp"
#include "axm/solver.hpp"

namespace axm {

/// Real 3D right-hand side (f, g) in cylindrical components.
struct RhsData {
  std::string name;
  Field3d f;
  Scalar3d g;
};

/// Named data sets: zero, bump (axisymmetric), bump-m1, bump-m3 (modes +-1 / +-3 only)
/// and band3 (all modes up to 3). Throws InvalidArgument on an unknown name.
RhsData builtin_rhs(const std::string& name);
std::vector<std::string> builtin_rhs_names();

/// Tabulated data: CSV with columns r,theta,z,f_r,f_theta,f_z,g on a full tensor grid,
/// interpolated trilinearly (periodic in theta, clamped in r and z).
RhsData tabulated_rhs(const std::string& path);

// ---- tables ----

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Header row, then one row per record with every value printed as %.17g.
void write_csv(const Table& table, const std::string& path);
std::string format_csv(const Table& table);
Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);

// ---- VTK ----

/// Nodal (or per-cell) complex cylindrical vector field; exported as six scalar arrays
/// <name>_<r|theta|z>_<re|im>.
struct NamedField {
  std::string name;
  std::vector<Vec3c> values;
};

/// Legacy ASCII unstructured grid of the meridian mesh (z = 0 plane holds (r, z) as (x, y)).
/// Point arrays must have one value per vertex, cell arrays one per triangle.
void write_vtk(const TriangleMesh& mesh, const std::vector<NamedField>& point_fields, const std::string& path,
               const std::vector<NamedField>& cell_fields = {});
std::string format_vtk(const TriangleMesh& mesh, const std::vector<NamedField>& point_fields,
                       const std::vector<NamedField>& cell_fields = {});

/// Revolved volume grid: the mesh copied to T azimuths theta_j = 2 pi j / T, wedge cells
/// between neighbouring copies. samples[j][v] holds the cylindrical components at theta_j;
/// the real parts are written as <name>_<r|theta|z> and a Cartesian vector <name>.
void write_volume_vtk(const TriangleMesh& mesh, const std::vector<std::vector<Vec3c>>& samples,
                      const std::string& name, const std::string& path);

/// Writes text to a file, throwing IoError on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace axm
