#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "sumrules/errors.hpp"
#include "sumrules/specialfn.hpp"

namespace sf = sumrules::specialfn;
namespace bm = boost::math;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("specialfn") {

TEST_CASE("gamma matches Boost over positive and negative arguments") {
  for (double x = -4.75; x < 30.0; x += 0.37) {
    if (std::abs(x - std::round(x)) < 1e-9) continue;
    CAPTURE(x);
    CHECK(rel(sf::gamma(x), bm::tgamma(x)) < 1e-13);
  }
  for (double x = 0.05; x < 150.0; x *= 1.3) {
    CAPTURE(x);
    CHECK(std::abs(sf::ln_gamma(x) - bm::lgamma(x)) < 1e-13 * std::max(1.0, std::abs(bm::lgamma(x))));
  }
}

TEST_CASE("gamma reflection on a nine-point grid") {
  for (int i = 1; i <= 9; ++i) {
    const double x = 0.1 * i;
    CAPTURE(x);
    CHECK(std::abs(sf::gamma(x) * sf::gamma(1.0 - x) - std::numbers::pi / std::sin(std::numbers::pi * x)) < 1e-12);
  }
}

TEST_CASE("gamma rejects poles and ln_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(sf::gamma(0.0), sumrules::DomainError);
  CHECK_THROWS_AS(sf::gamma(-3.0), sumrules::DomainError);
  CHECK_THROWS_AS(sf::ln_gamma(-1.5), sumrules::DomainError);
  CHECK_THROWS_AS(sf::ln_gamma(0.0), sumrules::DomainError);
}

TEST_CASE("gamma at half-integers") {
  CHECK(std::abs(sf::gamma(0.5) - std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(std::abs(sf::gamma(2.5) - 0.75 * std::sqrt(std::numbers::pi)) < 1e-14);
}

TEST_CASE("modified Bessel functions match Boost") {
  for (double nu : {1.0 / 3.0, 1.0 / 6.0, 0.25, 0.45, 0.6, 0.9}) {
    for (double z = 0.01; z < 60.0; z *= 1.25) {
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(rel(sf::bessel_i(nu, z), bm::cyl_bessel_i(nu, z)) < 1e-10);
      CHECK(rel(sf::bessel_i(-nu, z), bm::cyl_bessel_i(-nu, z)) < 1e-10);
      CHECK(rel(sf::bessel_k(nu, z), bm::cyl_bessel_k(nu, z)) < 1e-12);
    }
  }
}

TEST_CASE("Bessel reference values") {
  CHECK(std::abs(sf::bessel_k(1.0 / 3.0, 1.0) - 0.43843063344153436) < 1e-14);
  CHECK(std::abs(sf::bessel_i(1.0 / 3.0, 2.0) - 2.158782581372863) < 1e-13);
}

TEST_CASE("Bessel Wronskian I_nu K_{1-nu} + I_{nu-1} K_nu = 1/z") {
  for (double nu : {0.2, 1.0 / 3.0, 0.5, 0.75}) {
    for (double z = 0.05; z < 40.0; z *= 1.5) {
      CAPTURE(nu);
      CAPTURE(z);
      const double w = sf::bessel_i(nu, z) * sf::bessel_k(1.0 - nu, z) + sf::bessel_i(nu - 1.0, z) * sf::bessel_k(nu, z);
      CHECK(std::abs(w * z - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("Bessel domain errors") {
  CHECK_THROWS_AS(sf::bessel_k(0.3, 0.0), sumrules::DomainError);
  CHECK_THROWS_AS(sf::bessel_i(0.3, -1.0), sumrules::DomainError);
  CHECK_THROWS_AS(sf::bessel_k(1.5, 1.0), sumrules::DomainError);
}

TEST_CASE("Airy function and derivative match Boost") {
  for (double x = -15.0; x <= 5.0; x += 0.0731) {
    CAPTURE(x);
    CHECK(std::abs(sf::airy_ai(x) - bm::airy_ai(x)) < 1e-12);
    CHECK(std::abs(sf::airy_ai_prime(x) - bm::airy_ai_prime(x)) < 1e-11);
  }
}

TEST_CASE("Airy values at the origin and near tabulated zeros") {
  CHECK(std::abs(sf::airy_ai(0.0) - 0.3550280539) < 1e-10);
  CHECK(std::abs(sf::airy_ai(-2.33811)) < 1e-5);
  CHECK(std::abs(sf::airy_ai_prime(-1.01879)) < 1e-5);
  CHECK_THROWS_AS(sf::airy_ai(-150.0), sumrules::DomainError);
}

TEST_CASE("Airy equation residual on [-10, 2]") {
  constexpr double h = 1e-2;
  for (double x = -10.0; x <= 2.0; x += 0.05) {
    const double d2 = (-sf::airy_ai(x + 2 * h) + 16 * sf::airy_ai(x + h) - 30 * sf::airy_ai(x) + 16 * sf::airy_ai(x - h) -
                       sf::airy_ai(x - 2 * h)) /
                      (12 * h * h);
    CAPTURE(x);
    CHECK(std::abs(d2 - x * sf::airy_ai(x)) < 1e-7);
  }
}

TEST_CASE("Airy zeros match Boost and interlace") {
  const auto t = sf::airy_zero_table(50);
  REQUIRE(t.ai_zeros.size() == 50);
  for (int n = 0; n < 50; ++n) {
    CAPTURE(n);
    CHECK(rel(t.ai_zeros[n], -bm::airy_ai_zero<double>(n + 1)) < 1e-12);
    CHECK(std::abs(sf::airy_ai_prime(-t.ai_prime_zeros[n])) < 1e-10);
  }
  for (int n = 0; n < 20; ++n) {
    CAPTURE(n);
    CHECK(t.ai_prime_zeros[n] < t.ai_zeros[n]);
    CHECK(t.ai_zeros[n] < t.ai_prime_zeros[n + 1]);
  }
  CHECK(std::abs(sf::airy_zero(0, sf::AiryKind::derivative) - 1.0187929716) < 1e-9);
  CHECK(std::abs(sf::airy_zero(1, sf::AiryKind::function) - 4.0879494441) < 1e-9);
  CHECK_THROWS_AS(sf::airy_zero(-1, sf::AiryKind::function), sumrules::DomainError);
}

TEST_CASE("erf and scaled erfc") {
  for (double x = -6.0; x <= 6.0; x += 0.173) {
    CAPTURE(x);
    CHECK(std::abs(sf::erf(x) - std::erf(x)) < 2e-15);
  }
  for (double x = 0.0; x <= 25.0; x += 0.31) {
    CAPTURE(x);
    CHECK(rel(sf::erfcx(x), bm::erfc(x) * std::exp(x * x)) < 1e-12);
  }
  // 1/(x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4)) at large x
  const double x = 1e3;
  CHECK(rel(sf::erfcx(x), (1.0 - 0.5 / (x * x) + 0.75 / (x * x * x * x)) / (x * std::sqrt(std::numbers::pi))) < 1e-12);
}

}  // TEST_SUITE
