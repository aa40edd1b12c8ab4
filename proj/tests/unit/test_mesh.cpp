#include <cmath>
#include <cstdio>
#include <filesystem>

#include "axm/error.hpp"
#include "axm/mesh.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace axm;

namespace {

int count_tag(const TriangleMesh& m, BoundaryTag tag) {
  int n = 0;
  for (const auto& e : m.boundary()) n += e.tag == tag;
  return n;
}

}  // namespace

TEST_CASE("rectangle combinatorics") {
  const auto m = gen_rectangle(0, 1, 0, 1, 0.5);
  CHECK(m.num_vertices() == 9);
  CHECK(m.num_triangles() == 8);
  CHECK(count_tag(m, BoundaryTag::Axis) == 2);
  const auto f = gen_rectangle(0, 1, 0, 1, 0.25);
  CHECK(f.num_vertices() == 25);
  CHECK(f.num_triangles() == 32);
  CHECK(count_tag(gen_rectangle(0.5, 1, 0, 1, 0.5), BoundaryTag::Axis) == 0);
}

TEST_CASE("generator preconditions") {
  CHECK_THROWS_AS(gen_rectangle(0, 1, 0, 1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(gen_rectangle(1, 0, 0, 1, 0.1), InvalidArgument);
  CHECK_THROWS_AS(gen_rectangle(-0.5, 1, 0, 1, 0.1), InvalidArgument);
  CHECK_THROWS_AS(gen_lshape(0.0, 1, 2, 0, 2, 0.1), InvalidArgument);
  CHECK_THROWS_AS(gen_lshape(1, 1, 2, 0, 2, 1.5), InvalidArgument);
  CHECK_THROWS_AS(gen_lshape(2, 1, 2, 0, 2, 0.1), InvalidArgument);
}

TEST_CASE("L-shape corner descriptor") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.1);
  CHECK(d.corner.interior_angle == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(d.corner.alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.corner.a == 1.0);
  CHECK(d.corner.position.r == 1.0);
  CHECK(d.corner.position.z == 1.0);

  // two incident wall edges meeting at 3 pi / 2
  std::vector<Point> others;
  for (const auto& e : d.mesh.boundary()) {
    if (e.v[0] == d.corner.vertex) others.push_back(d.mesh.vertex(e.v[1]));
    if (e.v[1] == d.corner.vertex) others.push_back(d.mesh.vertex(e.v[0]));
    if (e.v[0] == d.corner.vertex || e.v[1] == d.corner.vertex) CHECK(e.tag == BoundaryTag::Wall);
  }
  REQUIRE(others.size() == 2);
  const Point a = others[0] - d.corner.position, b = others[1] - d.corner.position;
  const double inner = std::acos(dot(a, b) / (norm(a) * norm(b)));  // pi / 2 outside
  CHECK(std::abs(2 * kPi - inner - 1.5 * kPi) < 1e-12);

  const auto d2 = gen_lshape(0.5, 0.75, 1.5, 0, 1.5, 0.05);
  CHECK(d2.corner.a == 0.5);
}

TEST_CASE("areas and axis snapping") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.1);
  double sum = 0.0;
  for (std::size_t t = 0; t < d.mesh.num_triangles(); ++t) sum += d.mesh.area(static_cast<int>(t));
  CHECK(std::abs(sum - 3.0) <= 1e-12 * 3.0);
  CHECK(std::abs(d.mesh.total_area() - 3.0) <= 1e-12 * 3.0);
  const auto r = gen_rectangle(0, 0.7, -0.3, 0.9, 0.1);
  CHECK(std::abs(r.total_area() - 0.7 * 1.2) <= 1e-12);
  for (const auto& e : r.boundary())
    if (e.tag == BoundaryTag::Axis) {
      CHECK(r.vertex(e.v[0]).r == 0.0);
      CHECK(r.vertex(e.v[1]).r == 0.0);
    }
}

TEST_CASE("mesh file round trip") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.1);
  const auto path = (std::filesystem::temp_directory_path() / "axm_mesh_roundtrip.txt").string();
  save_mesh(d.mesh, path);
  const auto back = load_mesh(path);
  std::remove(path.c_str());
  CHECK(back == d.mesh);
  const auto r = gen_rectangle(0, 1, 0, 1, 0.1);
  CHECK(parse_mesh(format_mesh(r)) == r);
  CHECK_THROWS_AS(load_mesh(test::unreachable_path("mesh.txt")), IoError);
}

TEST_CASE("malformed mesh files are rejected") {
  const char* negative_r =
      "axmesh 1\nvertices 3\n-0.1 0\n1 0\n0 1\ntriangles 1\n0 1 2\nboundary 3\n0 1 wall\n1 2 wall\n2 0 wall\n";
  CHECK_THROWS_AS(parse_mesh(negative_r), InvalidArgument);
  const char* duplicate =
      "axmesh 1\nvertices 4\n0 0\n1 0\n1 1\n0 1\ntriangles 3\n0 1 2\n0 2 3\n0 1 2\n"
      "boundary 4\n0 1 wall\n1 2 wall\n2 3 wall\n3 0 axis\n";
  CHECK_THROWS_AS(parse_mesh(duplicate), InvalidArgument);
  CHECK_THROWS_AS(parse_mesh("axmesh 2\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_mesh("vertices 0\n"), InvalidArgument);
  const char* good =
      "axmesh 1\nvertices 4\n0 0\n1 0\n1 1\n0 1\ntriangles 2\n0 1 2\n0 2 3\n"
      "boundary 4\n0 1 wall\n1 2 wall\n2 3 wall\n3 0 axis\n";
  const auto m = parse_mesh(good);
  CHECK(m.num_triangles() == 2);
  CHECK(m.h() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("boundary classification") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.1);
  const auto c1 = classify_boundary(d.mesh);
  REQUIRE(c1.corners.size() == 1);
  CHECK(c1.corners[0].vertex == d.corner.vertex);
  CHECK(c1.corners[0].alpha == doctest::Approx(2.0 / 3.0));
  const auto c2 = classify_boundary(c1.mesh);
  CHECK(c2.mesh == c1.mesh);
  CHECK(c2.corners.size() == 1);

  const auto rect = classify_boundary(gen_rectangle(0, 1, 0, 1, 0.25));
  CHECK(rect.corners.empty());
  CHECK(count_tag(rect.mesh, BoundaryTag::Axis) >= 1);
  const auto ring = classify_boundary(gen_rectangle(0.5, 1, 0, 1, 0.25));
  CHECK(count_tag(ring.mesh, BoundaryTag::Axis) == 0);
}

TEST_CASE("corner polar frame") {
  const auto d = gen_lshape(1, 1, 2, 0, 2, 0.1);
  // the interior sweep covers phi in (0, 3 pi / 2)
  for (const Point p : {Point{0.5, 0.5}, Point{1.5, 0.5}, Point{0.5, 1.5}}) {
    const auto pc = corner_polar(d.corner, p);
    CHECK(pc.rho == doctest::Approx(std::sqrt(0.5)));
    CHECK(pc.phi > 0.0);
    CHECK(pc.phi < 1.5 * kPi);
  }
}
