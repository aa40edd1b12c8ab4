#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "axm/error.hpp"
#include "axm/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace axm;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("axm_test_" + name);
}

int count_occurrences(const std::string& s, const std::string& what) {
  int n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
  Table t{{"k", "value", "tiny"}, {{1.0, 0.1, 1e-300}, {-3.0, kPi, 6.02214076e23}, {0.0, -0.0, 1.0 / 3.0}}};
  const Table back = parse_csv(format_csv(t));
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  const auto path = temp_path("table.csv");
  write_csv(t, path.string());
  CHECK(read_csv(path.string()).rows == t.rows);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_csv(test::unreachable_path("x.csv")), IoError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), InvalidArgument);
}

TEST_CASE("VTK output") {
  const auto mesh = gen_rectangle(0, 1, 0, 1, 0.5);
  const std::string empty = format_vtk(mesh, {});
  CHECK(empty.find("POINTS 9 double") != std::string::npos);
  CHECK(empty.find("CELLS 8 32") != std::string::npos);
  CHECK(empty.find("POINT_DATA") == std::string::npos);

  NamedField f{"E", std::vector<Vec3c>(mesh.num_vertices(), Vec3c{cplx(1, 2), 3.0, 4.0})};
  const std::string one = format_vtk(mesh, {f});
  CHECK(one.find("POINT_DATA 9") != std::string::npos);
  CHECK(count_occurrences(one, "SCALARS E_") == 6);
  CHECK(one.find("SCALARS E_theta_im double") != std::string::npos);

  NamedField c{"P", std::vector<Vec3c>(mesh.num_triangles())};
  CHECK(format_vtk(mesh, {f}, {c}).find("CELL_DATA 8") != std::string::npos);

  CHECK_THROWS_AS(format_vtk(mesh, {f, f}), InvalidArgument);
  NamedField short_field{"S", std::vector<Vec3c>(3)};
  CHECK_THROWS_AS(format_vtk(mesh, {short_field}), InvalidArgument);
  CHECK_THROWS_AS(write_vtk(mesh, {f}, test::unreachable_path("x.vtk")), IoError);

  const std::vector<std::vector<Vec3c>> samples(4, f.values);
  const auto path = temp_path("volume.vtk");
  write_volume_vtk(mesh, samples, "E", path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("POINTS 36 double") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("built-in and tabulated right-hand sides") {
  for (const auto& name : builtin_rhs_names()) {
    const auto d = builtin_rhs(name);
    CHECK(d.name == name);
    const auto f = d.f(0.5, 0.3, 0.5);
    for (double x : f) CHECK(std::isfinite(x));
  }
  CHECK_THROWS_AS(builtin_rhs("nope"), InvalidArgument);
  const auto zero = builtin_rhs("zero");
  CHECK(zero.g(0.4, 1.0, 0.2) == 0.0);

  // linear data on a 2 x 4 x 2 grid is reproduced exactly by trilinear interpolation
  const auto path = temp_path("rhs.csv");
  {
    std::ofstream out(path);
    out << "r,theta,z,f_r,f_theta,f_z,g\n";
    for (double r : {0.0, 2.0})
      for (int j = 0; j < 4; ++j)
        for (double z : {0.0, 1.0}) {
          const double th = 2.0 * kPi * j / 4;
          out << r << ',' << th << ',' << z << ',' << r + z << ',' << 2 * z << ",1," << r - z << '\n';
        }
  }
  const auto t = tabulated_rhs(path.string());
  const auto f = t.f(0.5, 0.4, 0.25);
  CHECK(f[0] == doctest::Approx(0.75));
  CHECK(f[1] == doctest::Approx(0.5));
  CHECK(f[2] == doctest::Approx(1.0));
  CHECK(t.g(0.5, 6.0, 0.25) == doctest::Approx(0.25));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(tabulated_rhs(test::unreachable_path("rhs.csv")), IoError);
}
