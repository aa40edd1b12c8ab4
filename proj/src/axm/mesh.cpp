#include "axm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "axm/error.hpp"

namespace axm {

namespace {

constexpr double kSnap = 1e-14;

double snap_r(double r) { return std::abs(r) < kSnap ? 0.0 : r; }

using DirectedEdge = std::pair<int, int>;

/// Edges used by exactly one triangle, oriented as in that triangle, chained into
/// one closed loop starting from the lowest vertex index.
std::vector<BoundaryEdge> derive_boundary(const std::vector<Point>& vertices,
                                          const std::vector<std::array<int, 3>>& triangles) {
  std::map<DirectedEdge, int> directed;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      DirectedEdge d{t[e], t[(e + 1) % 3]};
      if (++directed[d] > 1) throw InvalidArgument("non-conforming triangulation: repeated oriented edge");
    }
  }
  std::map<int, int> next;
  for (const auto& [d, count] : directed) {
    if (directed.count({d.second, d.first})) continue;
    if (next.count(d.first)) throw InvalidArgument("boundary is not a simple closed loop");
    next[d.first] = d.second;
  }
  if (next.empty()) throw InvalidArgument("mesh has no boundary");

  std::vector<BoundaryEdge> loop;
  const int start = next.begin()->first;
  int cur = start;
  do {
    auto it = next.find(cur);
    if (it == next.end()) throw InvalidArgument("open boundary");
    const int nxt = it->second;
    const bool axis = vertices[static_cast<std::size_t>(cur)].r == 0.0 &&
                      vertices[static_cast<std::size_t>(nxt)].r == 0.0;
    loop.push_back({{cur, nxt}, axis ? BoundaryTag::Axis : BoundaryTag::Wall});
    cur = nxt;
    if (loop.size() > next.size()) throw InvalidArgument("open boundary");
  } while (cur != start);
  if (loop.size() != next.size()) throw InvalidArgument("boundary consists of several loops");
  return loop;
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                           std::vector<BoundaryEdge> boundary, double h)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), h_(h) {
  if (!(h_ > 0.0)) throw InvalidArgument("mesh size h must be positive");
  if (vertices_.empty() || triangles_.empty()) throw InvalidArgument("empty mesh");
  for (const auto& p : vertices_) {
    if (!std::isfinite(p.r) || !std::isfinite(p.z)) throw InvalidArgument("non-finite vertex coordinate");
    if (p.r < 0.0) throw InvalidArgument("vertex with r < 0");
  }
  const int nv = static_cast<int>(vertices_.size());
  std::vector<char> used(vertices_.size(), 0);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int i : triangles_[t]) {
      if (i < 0 || i >= nv) throw InvalidArgument("triangle references a missing vertex");
      used[static_cast<std::size_t>(i)] = 1;
    }
    if (!(area(static_cast<int>(t)) > 0.0)) throw InvalidArgument("degenerate or clockwise triangle");
  }
  if (std::find(used.begin(), used.end(), 0) != used.end())
    throw InvalidArgument("vertex not referenced by any triangle");

  auto derived = derive_boundary(vertices_, triangles_);
  std::map<DirectedEdge, std::size_t> position;
  for (std::size_t i = 0; i < derived.size(); ++i) position[{derived[i].v[0], derived[i].v[1]}] = i;
  if (boundary.size() != derived.size()) throw InvalidArgument("boundary block does not match the triangulation");
  boundary_.reserve(boundary.size());
  std::vector<char> seen(derived.size(), 0);
  for (const auto& e : boundary) {
    auto it = position.find({e.v[0], e.v[1]});
    BoundaryEdge oriented = e;
    if (it == position.end()) {
      it = position.find({e.v[1], e.v[0]});
      if (it == position.end()) throw InvalidArgument("boundary edge is not a triangulation boundary edge");
      oriented.v = {e.v[1], e.v[0]};
    }
    if (seen[it->second]++) throw InvalidArgument("duplicated boundary edge");
    if (oriented.tag == BoundaryTag::Axis &&
        (vertex(oriented.v[0]).r != 0.0 || vertex(oriented.v[1]).r != 0.0))
      throw InvalidArgument("axis-tagged edge off r = 0");
    boundary_.push_back(oriented);
  }
}

std::array<Point, 3> TriangleMesh::triangle_points(int t) const {
  const auto& tri = triangles_[static_cast<std::size_t>(t)];
  return {vertex(tri[0]), vertex(tri[1]), vertex(tri[2])};
}

double TriangleMesh::area(int t) const {
  const auto p = triangle_points(t);
  return 0.5 * cross(p[1] - p[0], p[2] - p[0]);
}

double TriangleMesh::total_area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) s += area(static_cast<int>(t));
  return s;
}

double TriangleMesh::diameter() const {
  double rmin = vertices_[0].r, rmax = rmin, zmin = vertices_[0].z, zmax = zmin;
  for (const auto& p : vertices_) {
    rmin = std::min(rmin, p.r);
    rmax = std::max(rmax, p.r);
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
  }
  return std::hypot(rmax - rmin, zmax - zmin);
}

Point TriangleMesh::outward_normal(const BoundaryEdge& e) const {
  const Point d = vertex(e.v[1]) - vertex(e.v[0]);
  const double len = norm(d);
  // domain on the left of d, so the outward normal is d rotated clockwise
  return {d.z / len, -d.r / len};
}

std::array<Point, 3> barycentric_gradients(const std::array<Point, 3>& p) {
  const double a2 = cross(p[1] - p[0], p[2] - p[0]);
  std::array<Point, 3> g;
  for (int i = 0; i < 3; ++i) {
    const Point& b = p[(i + 1) % 3];
    const Point& c = p[(i + 2) % 3];
    g[i] = {(b.z - c.z) / a2, (c.r - b.r) / a2};
  }
  return g;
}

PolarCoords corner_polar(const CornerDescriptor& c, Point p) {
  const Point d = p - c.position;
  double phi = std::atan2(d.z, d.r) - c.phi0;
  const double gap = 2.0 * kPi - c.interior_angle;
  const double upper = c.interior_angle + 0.5 * gap;
  while (phi > upper) phi -= 2.0 * kPi;
  while (phi <= upper - 2.0 * kPi) phi += 2.0 * kPi;
  return {norm(d), phi};
}

TriangleMesh gen_rectangle(double rmin, double rmax, double zmin, double zmax, double h) {
  if (!(h > 0.0)) throw InvalidArgument("gen_rectangle: h must be positive");
  if (!(rmin >= 0.0) || !(rmax > rmin) || !(zmax > zmin)) throw InvalidArgument("gen_rectangle: inverted bounds");
  const int nr = std::max(1, static_cast<int>(std::ceil((rmax - rmin) / h - 1e-9)));
  const int nz = std::max(1, static_cast<int>(std::ceil((zmax - zmin) / h - 1e-9)));
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>((nr + 1) * (nz + 1)));
  for (int j = 0; j <= nz; ++j) {
    const double z = j == nz ? zmax : zmin + (zmax - zmin) * j / nz;
    for (int i = 0; i <= nr; ++i) {
      const double r = i == nr ? rmax : rmin + (rmax - rmin) * i / nr;
      v.push_back({snap_r(r), z});
    }
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(2 * nr * nz));
  auto id = [nr](int i, int j) { return j * (nr + 1) + i; };
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  auto boundary = derive_boundary(v, tris);
  return TriangleMesh(std::move(v), std::move(tris), std::move(boundary), h);
}

LShapeDomain gen_lshape(double r_c, double z_c, double rmax, double zmin, double zmax, double h) {
  if (!(h > 0.0)) throw InvalidArgument("gen_lshape: h must be positive");
  if (!(r_c > 0.0)) throw InvalidArgument("gen_lshape: corner on the axis");
  if (!(rmax > r_c) || !(z_c > zmin) || !(zmax > z_c))
    throw InvalidArgument("gen_lshape: corner must lie strictly inside the bounding box");
  const double smallest = std::min({r_c, rmax - r_c, z_c - zmin, zmax - z_c});
  if (h > smallest) throw InvalidArgument("gen_lshape: h too large to resolve the corner");

  auto breakpoints = [h](double a, double b, double c) {
    const int n1 = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
    const int n2 = std::max(1, static_cast<int>(std::ceil((c - b) / h - 1e-9)));
    std::vector<double> x;
    for (int i = 0; i < n1; ++i) x.push_back(a + (b - a) * i / n1);
    for (int i = 0; i < n2; ++i) x.push_back(b + (c - b) * i / n2);
    x.push_back(c);
    return std::pair{x, n1};
  };
  const auto [rs, ir] = breakpoints(0.0, r_c, rmax);
  const auto [zs, jz] = breakpoints(zmin, z_c, zmax);
  const int nr = static_cast<int>(rs.size()) - 1;
  const int nz = static_cast<int>(zs.size()) - 1;
  auto cell_in = [&](int i, int j) { return i >= 0 && j >= 0 && i < nr && j < nz && !(i >= ir && j >= jz); };

  std::vector<int> index(static_cast<std::size_t>((nr + 1) * (nz + 1)), -1);
  std::vector<Point> v;
  for (int j = 0; j <= nz; ++j) {
    for (int i = 0; i <= nr; ++i) {
      if (cell_in(i, j) || cell_in(i - 1, j) || cell_in(i, j - 1) || cell_in(i - 1, j - 1)) {
        index[static_cast<std::size_t>(j * (nr + 1) + i)] = static_cast<int>(v.size());
        v.push_back({snap_r(rs[static_cast<std::size_t>(i)]), zs[static_cast<std::size_t>(j)]});
      }
    }
  }
  auto id = [&](int i, int j) { return index[static_cast<std::size_t>(j * (nr + 1) + i)]; };
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      if (!cell_in(i, j)) continue;
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  auto boundary = derive_boundary(v, tris);
  TriangleMesh mesh(std::move(v), std::move(tris), std::move(boundary), h);

  auto cls = classify_boundary(mesh);
  if (cls.corners.size() != 1 || cls.corners[0].vertex != id(ir, jz))
    throw NumericalError("gen_lshape: corner detection disagrees with construction");
  CornerDescriptor corner = cls.corners[0];
  if (std::abs(corner.interior_angle - 1.5 * kPi) > 1e-12)
    throw NumericalError("gen_lshape: corner angle is not 3pi/2");
  corner.interior_angle = 1.5 * kPi;
  corner.alpha = 2.0 / 3.0;
  corner.a = r_c;
  return {std::move(cls.mesh), corner};
}

BoundaryClassification classify_boundary(const TriangleMesh& mesh, double angle_tol) {
  std::vector<Point> v(mesh.vertices().begin(), mesh.vertices().end());
  std::vector<std::array<int, 3>> t(mesh.triangles().begin(), mesh.triangles().end());
  auto loop = derive_boundary(v, t);

  std::vector<CornerDescriptor> corners;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const BoundaryEdge& in = loop[(i + n - 1) % n];
    const BoundaryEdge& out = loop[i];
    if (in.tag != BoundaryTag::Wall || out.tag != BoundaryTag::Wall) continue;
    const int c = out.v[0];
    const Point pc = v[static_cast<std::size_t>(c)];
    const Point d_in = v[static_cast<std::size_t>(in.v[0])] - pc;
    const Point d_out = v[static_cast<std::size_t>(out.v[1])] - pc;
    double angle = std::atan2(cross(d_out, d_in), dot(d_out, d_in));
    if (angle <= 0.0) angle += 2.0 * kPi;
    if (angle <= kPi + 1e-9) continue;
    if (angle <= kPi + angle_tol) throw InvalidArgument("classify_boundary: corner angle within tolerance of pi");
    if (pc.r == 0.0) throw InvalidArgument("classify_boundary: reentrant wall corner on the axis");
    CornerDescriptor cd;
    cd.vertex = c;
    cd.position = pc;
    cd.interior_angle = angle;
    cd.alpha = kPi / angle;
    cd.phi0 = std::atan2(d_out.z, d_out.r);
    cd.a = pc.r;
    corners.push_back(cd);
  }
  return {TriangleMesh(std::move(v), std::move(t), std::move(loop), mesh.h()), std::move(corners)};
}

std::string format_mesh(const TriangleMesh& mesh) {
  std::string out = "axmesh 1\n";
  char buf[96];
  out += "vertices " + std::to_string(mesh.num_vertices()) + "\n";
  for (const auto& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.r, p.z);
    out += buf;
  }
  out += "triangles " + std::to_string(mesh.num_triangles()) + "\n";
  for (const auto& t : mesh.triangles()) {
    std::snprintf(buf, sizeof buf, "%d %d %d\n", t[0], t[1], t[2]);
    out += buf;
  }
  out += "boundary " + std::to_string(mesh.boundary().size()) + "\n";
  for (const auto& e : mesh.boundary()) {
    std::snprintf(buf, sizeof buf, "%d %d %s\n", e.v[0], e.v[1], e.tag == BoundaryTag::Axis ? "axis" : "wall");
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "h %.17g\n", mesh.h());
  out += buf;
  return out;
}

TriangleMesh parse_mesh(const std::string& text) {
  std::istringstream in(text);
  auto expect = [&in](const char* word) {
    std::string w;
    if (!(in >> w) || w != word) throw InvalidArgument(std::string("malformed mesh file: expected '") + word + "'");
  };
  auto count = [&in]() {
    long long n = -1;
    if (!(in >> n) || n < 0) throw InvalidArgument("malformed mesh file: bad count");
    return static_cast<std::size_t>(n);
  };
  expect("axmesh");
  int version = 0;
  if (!(in >> version) || version != 1) throw InvalidArgument("malformed mesh file: unsupported version");

  expect("vertices");
  std::vector<Point> v(count());
  for (auto& p : v)
    if (!(in >> p.r >> p.z)) throw InvalidArgument("malformed mesh file: vertex line");
  expect("triangles");
  std::vector<std::array<int, 3>> t(count());
  for (auto& tri : t)
    if (!(in >> tri[0] >> tri[1] >> tri[2])) throw InvalidArgument("malformed mesh file: triangle line");
  expect("boundary");
  std::vector<BoundaryEdge> b(count());
  for (auto& e : b) {
    std::string tag;
    if (!(in >> e.v[0] >> e.v[1] >> tag)) throw InvalidArgument("malformed mesh file: boundary line");
    if (tag == "axis")
      e.tag = BoundaryTag::Axis;
    else if (tag == "wall")
      e.tag = BoundaryTag::Wall;
    else
      throw InvalidArgument("malformed mesh file: unknown boundary tag '" + tag + "'");
  }
  // optional trailing nominal size
  double h = 0.0;
  std::string w;
  if (in >> w) {
    if (w != "h" || !(in >> h)) throw InvalidArgument("malformed mesh file: trailing data");
  } else {
    double hmax = 0.0;
    for (const auto& tri : t) {
      for (int e = 0; e < 3; ++e) {
        const auto i = static_cast<std::size_t>(tri[e]), j = static_cast<std::size_t>(tri[(e + 1) % 3]);
        if (i < v.size() && j < v.size()) hmax = std::max(hmax, norm(v[i] - v[j]));
      }
    }
    h = hmax;
  }
  return TriangleMesh(std::move(v), std::move(t), std::move(b), h);
}

TriangleMesh load_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open mesh file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_mesh(ss.str());
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write mesh file '" + path + "'");
  f << format_mesh(mesh);
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace axm
