#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axm/types.hpp"

namespace axm {

enum class BoundaryTag { Axis, Wall };

/// Boundary edge oriented with the domain on its left.
struct BoundaryEdge {
  std::array<int, 2> v{};
  BoundaryTag tag = BoundaryTag::Wall;

  bool operator==(const BoundaryEdge&) const = default;
};

/// Reentrant corner of the meridian domain and the local polar frame attached to it.
///
/// `phi0` is the direction (measured from e_r) of the wall edge where the local
/// angle phi vanishes; phi grows counterclockwise through the interior up to
/// `interior_angle`.
struct CornerDescriptor {
  int vertex = -1;
  Point position;
  double interior_angle = 0.0;
  double alpha = 0.0;  // pi / interior_angle
  double phi0 = 0.0;
  double a = 1.0;      // scale of the r/a cut-off

  bool reentrant() const { return interior_angle > kPi; }
};

/// Conical vertex on the symmetry axis; phi is measured from the +z direction.
struct ConicalDescriptor {
  Point vertex;
  double aperture = 0.0;
};

/// Conforming triangulation of the meridian domain. Immutable once built.
class TriangleMesh {
 public:
  TriangleMesh() = default;

  /// Validates every invariant and throws InvalidArgument on the first violation.
  /// Boundary edges may be given in either orientation; they are stored with the
  /// domain on their left.
  TriangleMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
               std::vector<BoundaryEdge> boundary, double h);

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const std::array<int, 3>> triangles() const { return triangles_; }
  std::span<const BoundaryEdge> boundary() const { return boundary_; }
  double h() const { return h_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  std::array<Point, 3> triangle_points(int t) const;
  double area(int t) const;
  double total_area() const;
  /// Diameter of the bounding box.
  double diameter() const;

  /// Outward unit normal of a boundary edge.
  Point outward_normal(const BoundaryEdge& e) const;

  bool operator==(const TriangleMesh&) const = default;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<BoundaryEdge> boundary_;
  double h_ = 0.0;
};

struct LShapeDomain {
  TriangleMesh mesh;
  CornerDescriptor corner;
};

struct BoundaryClassification {
  TriangleMesh mesh;
  std::vector<CornerDescriptor> corners;
};

/// Structured triangulation of [rmin, rmax] x [zmin, zmax].
TriangleMesh gen_rectangle(double rmin, double rmax, double zmin, double zmax, double h);

/// Meridian section of a top hat: [0, rmax] x [zmin, zmax] minus (r_c, rmax] x (z_c, zmax].
/// The single reentrant corner sits at (r_c, z_c).
LShapeDomain gen_lshape(double r_c, double z_c, double rmax, double zmin, double zmax, double h);

inline constexpr double kDefaultAngleTol = 1e-6;

/// Re-derives Axis/Wall tags from geometry and lists the reentrant wall corners.
BoundaryClassification classify_boundary(const TriangleMesh& mesh, double angle_tol = kDefaultAngleTol);

TriangleMesh load_mesh(const std::string& path);
void save_mesh(const TriangleMesh& mesh, const std::string& path);
TriangleMesh parse_mesh(const std::string& text);
std::string format_mesh(const TriangleMesh& mesh);

/// Barycentric gradients (d/dr, d/dz) of the three P1 hat functions of a triangle.
std::array<Point, 3> barycentric_gradients(const std::array<Point, 3>& p);

/// Local polar coordinates (rho, phi) of a point around a corner, phi in the corner's frame.
struct PolarCoords {
  double rho = 0.0;
  double phi = 0.0;
};
PolarCoords corner_polar(const CornerDescriptor& c, Point p);

}  // namespace axm
