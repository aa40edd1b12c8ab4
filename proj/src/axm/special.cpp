#include "axm/special.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "axm/error.hpp"
#include "axm/types.hpp"

namespace axm::special {

namespace {

constexpr double kRootTol = 1e-8;

/// Plain bisection; requires a sign change on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol, const char* what) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError(std::string(what) + ": no sign change in bracket");
  // a little below tol so the returned midpoint is within tol of the root
  while (hi - lo > 0.5 * tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double legendre_p(double nu, double x, double series_tol) {
  if (!(x > -1.0) || x > 1.0) throw InvalidArgument("legendre_p: argument outside (-1, 1]");
  const double t = 0.5 * (1.0 - x);
  double term = 1.0;
  double sum = 1.0;
  double scale = 1.0;  // running sum of |terms|
  for (long n = 0; n < kSeriesCap; ++n) {
    const double dn = static_cast<double>(n);
    term *= (dn - nu) * (dn + nu + 1.0) / ((dn + 1.0) * (dn + 1.0)) * t;
    sum += term;
    scale += std::abs(term);
    if (std::abs(term) <= series_tol * scale) return sum;
  }
  throw NumericalError("legendre_p: series did not converge within the iteration cap");
}

double legendre_p_deriv(double nu, double x, double series_tol) {
  if (!(x > -1.0) || !(x < 1.0)) throw InvalidArgument("legendre_p_deriv: argument outside (-1, 1)");
  return nu * (legendre_p(nu - 1.0, x, series_tol) - x * legendre_p(nu, x, series_tol)) / (1.0 - x * x);
}

double legendre_p1(double nu, double x, double series_tol) {
  if (x == 1.0) return 0.0;
  if (!(x > -1.0) || x > 1.0) throw InvalidArgument("legendre_p1: argument outside (-1, 1]");
  return nu * (legendre_p(nu - 1.0, x, series_tol) - x * legendre_p(nu, x, series_tol)) / std::sqrt(1.0 - x * x);
}

double find_beta(double series_tol) {
  // beta -> 1 sends the argument to -1 where the series stalls; 1.05 is well inside the bracket.
  auto f = [series_tol](double beta) { return legendre_p(0.5, std::cos(kPi / beta), series_tol); };
  return bisect(f, 1.05, 2.0, kRootTol, "find_beta");
}

std::optional<double> find_nu(double aperture, double series_tol) {
  if (!(aperture > 0.0) || !(aperture < kPi)) throw InvalidArgument("find_nu: aperture outside (0, pi)");
  const double threshold = kPi / find_beta(series_tol);
  if (aperture <= threshold) return std::nullopt;
  const double x = std::cos(aperture);
  auto f = [x, series_tol](double nu) { return legendre_p(nu, x, series_tol); };
  return bisect(f, 0.0, 0.5, kRootTol, "find_nu");
}

}  // namespace axm::special
