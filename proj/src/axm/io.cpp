#include "axm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "axm/error.hpp"

namespace axm {

namespace {

double bump(double r, double z) {
  const double dr = r - 0.5, dz = z - 0.5;
  return std::exp(-(dr * dr + dz * dz) / 0.1);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> builtin_rhs_names() { return {"zero", "bump", "bump-m1", "bump-m3", "band3"}; }

RhsData builtin_rhs(const std::string& name) {
  RhsData d;
  d.name = name;
  if (name == "zero") {
    d.f = [](double, double, double) { return Vector3d{}; };
    d.g = [](double, double, double) { return 0.0; };
  } else if (name == "bump") {
    d.f = [](double r, double, double z) {
      const double b = bump(r, z);
      return Vector3d{b, b, b};
    };
    d.g = [](double, double, double) { return 0.0; };
  } else if (name == "bump-m1") {
    d.f = [](double r, double t, double z) {
      const double b = bump(r, z);
      return Vector3d{b * std::cos(t), -b * std::sin(t), b * std::cos(t)};
    };
    d.g = [](double r, double t, double z) { return bump(r, z) * std::sin(t); };
  } else if (name == "bump-m3") {
    d.f = [](double r, double t, double z) {
      const double b = bump(r, z);
      return Vector3d{b * std::cos(3 * t), b * std::sin(3 * t), b * std::cos(3 * t)};
    };
    d.g = [](double r, double t, double z) { return bump(r, z) * std::cos(3 * t); };
  } else if (name == "band3") {
    d.f = [](double r, double t, double z) {
      const double b = bump(r, z);
      return Vector3d{b * (1.0 + std::cos(t) + std::sin(2 * t) + std::cos(3 * t)),
                      b * (std::sin(t) + std::cos(2 * t) - 0.5 * std::sin(3 * t)),
                      b * (0.5 + std::sin(t) + std::cos(3 * t))};
    };
    d.g = [](double r, double t, double z) {
      return bump(r, z) * (std::cos(t) + 0.25 * std::cos(2 * t) + std::sin(3 * t));
    };
  } else {
    throw InvalidArgument("unknown right-hand side '" + name + "'");
  }
  return d;
}

namespace {

/// Samples on a tensor grid (r, theta, z) with trilinear lookup.
struct Grid {
  std::vector<double> r, t, z;
  std::vector<std::array<double, 4>> values;  // f_r, f_theta, f_z, g at (ir, it, iz)

  std::size_t at(std::size_t ir, std::size_t it, std::size_t iz) const { return (ir * t.size() + it) * z.size() + iz; }

  static void bracket(const std::vector<double>& axis, double x, std::size_t& i0, double& w) {
    if (axis.size() == 1 || x <= axis.front()) {
      i0 = 0;
      w = 0.0;
      return;
    }
    if (x >= axis.back()) {
      i0 = axis.size() - 2;
      w = 1.0;
      return;
    }
    i0 = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), x) - axis.begin()) - 1;
    w = (x - axis[i0]) / (axis[i0 + 1] - axis[i0]);
  }

  std::array<double, 4> eval(double rr, double th, double zz) const {
    std::size_t ir, iz;
    double wr, wz;
    bracket(r, rr, ir, wr);
    bracket(z, zz, iz, wz);
    const std::size_t nr1 = r.size() > 1 ? ir + 1 : ir, nz1 = z.size() > 1 ? iz + 1 : iz;
    // theta: periodic over [0, 2 pi)
    double tt = std::fmod(th, 2 * kPi);
    if (tt < 0) tt += 2 * kPi;
    std::size_t it0 = 0, it1 = 0;
    double wt = 0.0;
    if (t.size() > 1) {
      if (tt < t.front() || tt >= t.back()) {
        it0 = t.size() - 1;
        it1 = 0;
        const double span = t.front() + 2 * kPi - t.back();
        const double off = tt >= t.back() ? tt - t.back() : tt + 2 * kPi - t.back();
        wt = off / span;
      } else {
        it0 = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tt) - t.begin()) - 1;
        it1 = it0 + 1;
        wt = (tt - t[it0]) / (t[it1] - t[it0]);
      }
    }
    std::array<double, 4> out{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          const double w = (a ? wr : 1 - wr) * (b ? wt : 1 - wt) * (c ? wz : 1 - wz);
          if (w == 0.0) continue;
          const auto& v = values[at(a ? nr1 : ir, b ? it1 : it0, c ? nz1 : iz)];
          for (int q = 0; q < 4; ++q) out[q] += w * v[q];
        }
    return out;
  }
};

}  // namespace

RhsData tabulated_rhs(const std::string& path) {
  const Table tab = read_csv(path);
  const std::vector<std::string> want{"r", "theta", "z", "f_r", "f_theta", "f_z", "g"};
  std::array<std::size_t, 7> col{};
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto it = std::find(tab.header.begin(), tab.header.end(), want[i]);
    if (it == tab.header.end()) throw InvalidArgument("tabulated data '" + path + "' lacks column " + want[i]);
    col[i] = static_cast<std::size_t>(it - tab.header.begin());
  }
  auto grid = std::make_shared<Grid>();
  std::set<double> rs, ts, zs;
  for (const auto& row : tab.rows) {
    rs.insert(row[col[0]]);
    ts.insert(row[col[1]]);
    zs.insert(row[col[2]]);
  }
  grid->r.assign(rs.begin(), rs.end());
  grid->t.assign(ts.begin(), ts.end());
  grid->z.assign(zs.begin(), zs.end());
  if (grid->r.empty() || grid->r.size() * grid->t.size() * grid->z.size() != tab.rows.size())
    throw InvalidArgument("tabulated data '" + path + "' is not a full tensor grid");
  if (grid->t.front() < 0.0 || grid->t.back() >= 2 * kPi)
    throw InvalidArgument("tabulated data '" + path + "': theta must lie in [0, 2 pi)");
  grid->values.assign(tab.rows.size(), {});
  auto index = [](const std::vector<double>& axis, double x) {
    return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), x) - axis.begin());
  };
  for (const auto& row : tab.rows)
    grid->values[grid->at(index(grid->r, row[col[0]]), index(grid->t, row[col[1]]), index(grid->z, row[col[2]]))] = {
        row[col[3]], row[col[4]], row[col[5]], row[col[6]]};

  RhsData d;
  d.name = path;
  d.f = [grid](double r, double t, double z) {
    const auto v = grid->eval(r, t, z);
    return Vector3d{v[0], v[1], v[2]};
  };
  d.g = [grid](double r, double t, double z) { return grid->eval(r, t, z)[3]; };
  return d;
}

// ---- CSV ----

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw InvalidArgument("csv row width differs from the header");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + g17(row[i]);
    out += "\n";
  }
  return out;
}

void write_csv(const Table& table, const std::string& path) { write_text(path, format_csv(table)); }

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size())
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                            " values");
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size())
        throw InvalidArgument("csv line " + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidArgument("csv: missing header row");
  return t;
}

Table read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

// ---- VTK ----

namespace {

void check_names(const std::vector<NamedField>& point_fields, const std::vector<NamedField>& cell_fields) {
  std::set<std::string> seen;
  for (const auto* list : {&point_fields, &cell_fields})
    for (const auto& f : *list) {
      if (f.name.empty() || f.name.find_first_of(" \t\r\n") != std::string::npos)
        throw InvalidArgument("vtk: field name '" + f.name + "' must be non-empty without whitespace");
      if (!seen.insert(f.name).second) throw InvalidArgument("vtk: duplicate field name '" + f.name + "'");
    }
}

void append_arrays(std::ostringstream& os, const std::vector<NamedField>& fields) {
  static const char* comp[3] = {"r", "theta", "z"};
  for (const auto& f : fields)
    for (int c = 0; c < 3; ++c)
      for (int part = 0; part < 2; ++part) {
        os << "SCALARS " << f.name << "_" << comp[c] << "_" << (part ? "im" : "re") << " double 1\n";
        os << "LOOKUP_TABLE default\n";
        for (const auto& v : f.values) os << g17(part ? v[c].imag() : v[c].real()) << "\n";
      }
}

}  // namespace

std::string format_vtk(const TriangleMesh& mesh, const std::vector<NamedField>& point_fields,
                       const std::vector<NamedField>& cell_fields) {
  check_names(point_fields, cell_fields);
  for (const auto& f : point_fields)
    if (f.values.size() != mesh.num_vertices())
      throw InvalidArgument("vtk: point field '" + f.name + "' needs one value per vertex");
  for (const auto& f : cell_fields)
    if (f.values.size() != mesh.num_triangles())
      throw InvalidArgument("vtk: cell field '" + f.name + "' needs one value per triangle");

  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\naxmaxwell meridian mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& p : mesh.vertices()) os << g17(p.r) << " " << g17(p.z) << " 0\n";
  os << "CELLS " << mesh.num_triangles() << " " << 4 * mesh.num_triangles() << "\n";
  for (const auto& t : mesh.triangles()) os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "CELL_TYPES " << mesh.num_triangles() << "\n";
  for (std::size_t i = 0; i < mesh.num_triangles(); ++i) os << "5\n";
  if (!point_fields.empty()) {
    os << "POINT_DATA " << mesh.num_vertices() << "\n";
    append_arrays(os, point_fields);
  }
  if (!cell_fields.empty()) {
    os << "CELL_DATA " << mesh.num_triangles() << "\n";
    append_arrays(os, cell_fields);
  }
  return os.str();
}

void write_vtk(const TriangleMesh& mesh, const std::vector<NamedField>& point_fields, const std::string& path,
               const std::vector<NamedField>& cell_fields) {
  write_text(path, format_vtk(mesh, point_fields, cell_fields));
}

void write_volume_vtk(const TriangleMesh& mesh, const std::vector<std::vector<Vec3c>>& samples,
                      const std::string& name, const std::string& path) {
  check_names({NamedField{name, {}}}, {});
  const std::size_t T = samples.size();
  const std::size_t n = mesh.num_vertices();
  if (T < 3) throw InvalidArgument("volume vtk: need at least 3 azimuthal samples");
  for (const auto& s : samples)
    if (s.size() != n) throw InvalidArgument("volume vtk: every slice needs one value per vertex");

  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\naxmaxwell revolved field\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << T * n << " double\n";
  for (std::size_t j = 0; j < T; ++j) {
    const double th = 2 * kPi * static_cast<double>(j) / static_cast<double>(T);
    for (const auto& p : mesh.vertices())
      os << g17(p.r * std::cos(th)) << " " << g17(p.r * std::sin(th)) << " " << g17(p.z) << "\n";
  }
  const std::size_t nc = T * mesh.num_triangles();
  os << "CELLS " << nc << " " << 7 * nc << "\n";
  for (std::size_t j = 0; j < T; ++j) {
    const std::size_t a = j * n, b = ((j + 1) % T) * n;
    for (const auto& t : mesh.triangles())
      os << "6 " << a + t[0] << " " << a + t[1] << " " << a + t[2] << " " << b + t[0] << " " << b + t[1] << " "
         << b + t[2] << "\n";
  }
  os << "CELL_TYPES " << nc << "\n";
  for (std::size_t i = 0; i < nc; ++i) os << "13\n";
  os << "POINT_DATA " << T * n << "\n";
  static const char* comp[3] = {"r", "theta", "z"};
  for (int c = 0; c < 3; ++c) {
    os << "SCALARS " << name << "_" << comp[c] << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& s : samples)
      for (const auto& v : s) os << g17(v[c].real()) << "\n";
  }
  os << "VECTORS " << name << " double\n";
  for (std::size_t j = 0; j < T; ++j) {
    const double th = 2 * kPi * static_cast<double>(j) / static_cast<double>(T);
    const double ct = std::cos(th), st = std::sin(th);
    for (const auto& v : samples[j]) {
      const double vr = v[0].real(), vt = v[1].real();
      os << g17(vr * ct - vt * st) << " " << g17(vr * st + vt * ct) << " " << g17(v[2].real()) << "\n";
    }
  }
  write_text(path, os.str());
}

}  // namespace axm
