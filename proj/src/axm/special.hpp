#pragma once

#include <optional>

namespace axm::special {

inline constexpr double kSeriesTol = 1e-15;
inline constexpr long kSeriesCap = 100000;

/// Legendre function of the first kind P_nu(x) for real degree, x in (-1, 1],
/// summed from 2F1(-nu, nu + 1; 1; (1 - x) / 2). `series_tol` is the relative size
/// of the last retained term.
double legendre_p(double nu, double x, double series_tol = kSeriesTol);

/// dP_nu/dx on (-1, 1), from (1 - x^2) P'_nu = nu (P_{nu-1} - x P_nu).
double legendre_p_deriv(double nu, double x, double series_tol = kSeriesTol);

/// Associated function of order one, P^1_nu(x) = sqrt(1 - x^2) dP_nu/dx (no Condon-Shortley phase).
/// Exactly 0 at x = 1.
double legendre_p1(double nu, double x, double series_tol = kSeriesTol);

/// Root of P_{1/2}(cos(pi / beta)) = 0 on (1, 2). A conical vertex is singular iff its aperture exceeds pi / beta.
double find_beta(double series_tol = kSeriesTol);

/// Degree nu in (0, 1/2) with P_nu(cos aperture) = 0, or nothing when aperture <= pi / beta.
std::optional<double> find_nu(double aperture, double series_tol = kSeriesTol);

}  // namespace axm::special
