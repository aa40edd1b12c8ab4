#include <cmath>
#include <random>

#include "axm/error.hpp"
#include "axm/special.hpp"
#include "axm/types.hpp"
#include "doctest.h"

using namespace axm;
using namespace axm::special;

TEST_CASE("Legendre functions at integer degree") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.99, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CHECK(std::abs(legendre_p(0, x) - 1.0) < 1e-12);
    CHECK(std::abs(legendre_p(1, x) - x) < 1e-12);
    CHECK(std::abs(legendre_p(2, x) - 0.5 * (3 * x * x - 1)) < 1e-12);
    CHECK(std::abs(legendre_p(3, x) - 0.5 * (5 * x * x * x - 3 * x)) < 1e-12);
  }
  CHECK(legendre_p(1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  for (double nu : {0.2, 0.5, 1.7}) CHECK(legendre_p(nu, 1.0) == 1.0);
  CHECK(std::abs(legendre_p(0.5, std::cos(kPi / 1.3771))) < 1e-3);
  CHECK_THROWS_AS(legendre_p(0.5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(legendre_p(0.5, 1.5), InvalidArgument);
}

TEST_CASE("derivative and associated function against finite differences") {
  const double d = 1e-6;
  for (double nu : {0.3, 0.5, 1.7})
    for (double x = -0.95; x <= 0.95; x += 0.05) {
      const double fd = (legendre_p(nu, x + d) - legendre_p(nu, x - d)) / (2 * d);
      const double an = legendre_p_deriv(nu, x);
      CHECK(std::abs(an - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  CHECK(legendre_p1(1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(legendre_p1(1, 1.0) == 0.0);
  const double x = 0.5;
  const double fd = (legendre_p(0.5, x + d) - legendre_p(0.5, x - d)) / (2 * d);
  CHECK(std::abs(legendre_p1(0.5, x) - std::sqrt(1 - x * x) * fd) <= 1e-6 * std::abs(legendre_p1(0.5, x)));
}

TEST_CASE("threshold beta") {
  const double beta = find_beta();
  CHECK(std::abs(beta - 1.3771) <= 5e-4);
  CHECK(std::abs(kPi / beta - (130.0 + 43.0 / 60.0) * kPi / 180.0) <= 1e-3);
  CHECK(std::abs(legendre_p(0.5, std::cos(kPi / beta))) <= 1e-8);
  CHECK(std::abs(find_beta(0.5 * kSeriesTol) - beta) <= 1e-8);
}

TEST_CASE("cone degree") {
  const double beta = find_beta();
  CHECK_FALSE(find_nu(kPi / 2).has_value());
  CHECK_FALSE(find_nu(kPi / beta - 1e-3).has_value());
  const auto near = find_nu(kPi / beta + 1e-3);
  REQUIRE(near.has_value());
  CHECK(std::abs(*near - 0.5) < 0.05);

  // dense scan oracle on (0, 1/2)
  const double x = std::cos(2.8);
  double root = -1.0;
  double prev = legendre_p(1e-4, x);
  for (int i = 2; i < 5000; ++i) {
    const double nu = 1e-4 * i;
    const double v = legendre_p(nu, x);
    if ((v > 0) != (prev > 0)) {
      root = nu - 0.5e-4;
      break;
    }
    prev = v;
  }
  REQUIRE(root > 0.0);
  const auto nu = find_nu(2.8);
  REQUIRE(nu.has_value());
  CHECK(std::abs(*nu - root) <= 1e-4);
  CHECK(std::abs(legendre_p(*nu, x)) < 1e-7);

  CHECK_THROWS_AS(find_nu(0.0), InvalidArgument);
  CHECK_THROWS_AS(find_nu(3.5), InvalidArgument);
}
