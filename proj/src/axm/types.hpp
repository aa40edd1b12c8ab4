#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace axm {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// A point of the meridian half-plane.
struct Point {
  double r = 0.0;
  double z = 0.0;

  bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.r + b.r, a.z + b.z}; }
inline Point operator-(Point a, Point b) { return {a.r - b.r, a.z - b.z}; }
inline Point operator*(double s, Point a) { return {s * a.r, s * a.z}; }
inline double dot(Point a, Point b) { return a.r * b.r + a.z * b.z; }
inline double cross(Point a, Point b) { return a.r * b.z - a.z * b.r; }
inline double norm(Point a) { return std::hypot(a.r, a.z); }

/// Cylindrical components (r, theta, z) of a complex mode coefficient.
using Vec3c = std::array<cplx, 3>;

enum Component : int { kR = 0, kTheta = 1, kZ = 2 };

inline Vec3c operator+(const Vec3c& a, const Vec3c& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3c operator-(const Vec3c& a, const Vec3c& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3c operator*(cplx s, const Vec3c& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Sesquilinear pairing a . conj(b).
inline cplx dotc(const Vec3c& a, const Vec3c& b) {
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}
inline double norm2(const Vec3c& a) { return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]); }
inline bool is_finite(const Vec3c& a) {
  for (const auto& c : a)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

/// Function space of a mode problem: X carries tangential (electric), Y normal (magnetic) wall conditions.
enum class Space { X, Y };

inline const char* to_string(Space s) { return s == Space::X ? "X" : "Y"; }

}  // namespace axm
