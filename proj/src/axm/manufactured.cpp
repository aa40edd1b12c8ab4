#include "axm/manufactured.hpp"

#include <cmath>
#include <cstdlib>

namespace axm {

ManufacturedField::ManufacturedField(int k, Space space, double radius) : k_(k), space_(space), radius_(radius) {
  using Z = ZFactor;
  const int m = std::abs(k);
  const double s = k >= 0 ? 1.0 : -1.0;
  if (space == Space::X) {
    if (m == 0) {
      comps_[kR] = {{1.0, 1, 0, Z::Sin}};
      comps_[kTheta] = {{1.0, 1, 1, Z::Sin}};
      comps_[kZ] = {{1.0, 0, 1, Z::Cos}};
    } else {
      comps_[kR] = {{1.0, m - 1, 1, Z::Sin}};
      comps_[kTheta] = {{kI * s, m - 1, 1, Z::Sin}, {0.5, m + 1, 1, Z::Sin}};
      comps_[kZ] = {{1.0, m, 1, Z::Cos}};
    }
  } else {
    if (m == 0) {
      comps_[kR] = {{1.0, 1, 1, Z::Cos}};
      comps_[kTheta] = {{1.0, 1, 0, Z::Linear}};
      comps_[kZ] = {{1.0, 0, 0, Z::Sin}, {1.0, 2, 0, Z::Sin}};
    } else {
      comps_[kR] = {{1.0, m - 1, 1, Z::Cos}};
      comps_[kTheta] = {{kI * s, m - 1, 1, Z::Cos}, {1.0, m + 1, 0, Z::Linear}};
      comps_[kZ] = {{1.0, m, 0, Z::Sin}};
    }
  }
}

Jet ManufacturedField::jet(Point p) const {
  const double r = p.r;
  const double b = radius_ * radius_ - r * r;
  Jet j;
  j.r = r;
  for (std::size_t c = 0; c < 3; ++c) {
    for (const Term& t : comps_[c]) {
      double zv = 0.0, dzv = 0.0;
      switch (t.z) {
        case ZFactor::Sin:
          zv = std::sin(kPi * p.z);
          dzv = kPi * std::cos(kPi * p.z);
          break;
        case ZFactor::Cos:
          zv = std::cos(kPi * p.z);
          dzv = -kPi * std::sin(kPi * p.z);
          break;
        case ZFactor::Linear:
          zv = 1.0 + p.z;
          dzv = 1.0;
          break;
      }
      const double rp = std::pow(r, t.p);
      const double be = std::pow(b, t.e);
      const double drp = t.p == 0 ? 0.0 : t.p * std::pow(r, t.p - 1);
      const double dbe = t.e == 0 ? 0.0 : t.e * std::pow(b, t.e - 1) * (-2.0 * r);
      j.u[c] += t.c * rp * be * zv;
      j.dr[c] += t.c * (drp * be + rp * dbe) * zv;
      j.dz[c] += t.c * rp * be * dzv;
    }
  }
  return j;
}

FieldEvaluator ManufacturedField::evaluator() const {
  return [self = *this](int, const QuadPoint& q) {
    const Jet j = self.jet(q.p);
    return PointValue{j.u, curl_k(j, self.k_), div_k(j, self.k_)};
  };
}

ModeField ManufacturedField::interpolant(const TriangleMesh& mesh) const {
  ModeField f(k_, mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) f.values[v] = value(mesh.vertex(static_cast<int>(v)));
  return f;
}

}  // namespace axm
