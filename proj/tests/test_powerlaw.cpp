#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "sumrules/errors.hpp"
#include "sumrules/powerlaw.hpp"
#include "sumrules/specialfn.hpp"

namespace pl = sumrules::powerlaw;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

// S at unit strength in 50-digit arithmetic.
double oracle_S(double N) {
  const mp b = mp(1) / (mp(N) + 2);
  using boost::math::tgamma;
  const mp v = pow(b, 2 - 4 * b) * tgamma(3 * b) * tgamma(2 * b) * tgamma(2 * b) / (tgamma(4 * b) * tgamma(1 - b));
  return static_cast<double>(v);
}

double perturbed_gamma(double x) { return sumrules::specialfn::gamma(x) * (1.0 + 1e-3); }

}  // namespace

TEST_SUITE("powerlaw") {

TEST_CASE("derive_params") {
  const auto p = pl::derive_params(4.0);
  CHECK(p.beta == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(p.nu == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.strength == 1.0);
  CHECK_THROWS_AS(pl::derive_params(0.0), sumrules::DomainError);
  CHECK_THROWS_AS(pl::derive_params(-1.0), sumrules::DomainError);
  CHECK_THROWS_AS(pl::derive_params(2.0, 0.0), sumrules::DomainError);
  CHECK_THROWS_AS(pl::derive_params(std::nan(""), 1.0), sumrules::DomainError);
}

TEST_CASE("closed form S against a 50-digit evaluation") {
  for (double N : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 10.0, 40.0}) {
    CAPTURE(N);
    CHECK(std::abs(pl::closed_form_S(pl::derive_params(N)) / oracle_S(N) - 1.0) < 1e-13);
  }
}

TEST_CASE("closed form S at the worked examples") {
  CHECK(std::abs(pl::closed_form_S(pl::derive_params(2.0)) - kPi / 4.0) < 1e-14);
  CHECK(std::abs(pl::closed_form_S(pl::derive_params(1.0)) - 0.729) < 5e-4);
  CHECK(std::abs(pl::closed_form_S(pl::derive_params(4.0)) - 0.76330) < 5e-6);
}

TEST_CASE("unreflected form agrees with the compact form") {
  for (double N : {0.7, 1.0, 2.0, 4.0, 9.0}) {
    const auto p = pl::derive_params(N);
    CAPTURE(N);
    CHECK(std::abs(pl::closed_form_S_unreflected(p) - pl::closed_form_S(p)) < 1e-13);
  }
}

TEST_CASE("S1 and S2 for N > 2") {
  const auto q = pl::derive_params(4.0);
  const double S = pl::closed_form_S(q);
  // 2 cos(pi/3) = 1 and sin(pi/2) / sin(pi/6) = 2
  CHECK(std::abs(pl::closed_form_S1(q) - S) < 1e-14);
  CHECK(std::abs(pl::closed_form_S2(q) - 2.0 * S) < 1e-14);

  for (double N : {2.5, 3.0, 4.0, 6.0, 10.0, 25.0}) {
    const auto p = pl::derive_params(N);
    CAPTURE(N);
    const double s1 = pl::closed_form_S1(p);
    const double s2 = pl::closed_form_S2(p);
    CHECK(std::abs(s2 - s1 - pl::closed_form_S(p)) < 1e-12);
    CHECK(std::abs(pl::closed_form_S1_gamma_ratio(p) - s1) < 1e-12);
    CHECK(std::abs(pl::closed_form_S2_gamma_ratio(p) - s2) < 1e-12);
    CHECK(s1 > 0.0);
    CHECK(s2 > s1);
  }
}

TEST_CASE("S1 and S2 diverge for N <= 2") {
  for (double N : {0.5, 1.0, 2.0}) {
    const auto p = pl::derive_params(N);
    CAPTURE(N);
    CHECK_THROWS_AS(pl::closed_form_S1(p), sumrules::DivergentSum);
    CHECK_THROWS_AS(pl::closed_form_S2(p), sumrules::DivergentSum);
    const auto sums = pl::closed_form_sums(p);
    CHECK(sums.S1_divergent);
    CHECK(sums.S2_divergent);
    CHECK_FALSE(sums.S1.has_value());
    CHECK(std::isfinite(sums.S));
  }
  const auto sums = pl::closed_form_sums(pl::derive_params(3.0));
  CHECK_FALSE(sums.S1_divergent);
  REQUIRE(sums.S2.has_value());
}

TEST_CASE("ladder divergence by order") {
  CHECK(pl::ladder_sum_diverges(pl::derive_params(2.0), 1));
  CHECK_FALSE(pl::ladder_sum_diverges(pl::derive_params(2.0001), 1));
  CHECK_FALSE(pl::ladder_sum_diverges(pl::derive_params(1.0), 2));
  CHECK(pl::ladder_sum_diverges(pl::derive_params(0.5), 2));
  CHECK(pl::ladder_sum_diverges(pl::derive_params(2.0 / 3.0), 2));
}

TEST_CASE("strength scaling") {
  for (double g : {0.25, 3.0, 17.0}) {
    for (double N : {1.0, 4.0}) {
      const auto unit = pl::derive_params(N);
      const auto p = pl::derive_params(N, g);
      const double factor = std::pow(g, -2.0 / (N + 2.0));
      CAPTURE(g);
      CAPTURE(N);
      CHECK(std::abs(pl::closed_form_S(p) - factor * pl::closed_form_S(unit)) < 1e-14);
      if (N > 2.0) CHECK(std::abs(pl::closed_form_S1(p) - factor * pl::closed_form_S1(unit)) < 1e-14);
    }
  }
}

TEST_CASE("WKB eigenvalues") {
  const auto sho = pl::derive_params(2.0);
  for (int n = 0; n < 10; ++n) CHECK(std::abs(pl::wkb_eigenvalue(sho, n) - (2.0 * n + 1.0)) < 1e-12);

  const auto lin = pl::derive_params(1.0);
  const double odd = sumrules::specialfn::airy_zero(10, sumrules::specialfn::AiryKind::function);
  const double even = sumrules::specialfn::airy_zero(10, sumrules::specialfn::AiryKind::derivative);
  CHECK(std::abs(pl::wkb_eigenvalue(lin, 21) / odd - 1.0) < 5e-3);
  CHECK(std::abs(pl::wkb_eigenvalue(lin, 20) / even - 1.0) < 5e-3);

  const auto strong = pl::derive_params(4.0, 8.0);
  CHECK(std::abs(pl::wkb_eigenvalue(strong, 3) - std::pow(8.0, 1.0 / 3.0) * pl::wkb_eigenvalue(pl::derive_params(4.0), 3)) <
        1e-12);
  CHECK_THROWS_AS(pl::wkb_eigenvalue(lin, -1.0), sumrules::DomainError);
}

TEST_CASE("box limit") {
  const auto box = pl::box_limit_sums();
  CHECK(std::abs(*box.S1 - kPi * kPi / 24.0) < 1e-15);
  CHECK(std::abs(*box.S2 - kPi * kPi / 8.0) < 1e-15);
  CHECK(std::abs(box.S - kPi * kPi / 12.0) < 1e-15);
  CHECK(std::abs(*box.S2 - *box.S1 - box.S) < 1e-15);
  CHECK(std::abs(pl::scaled_box_S(1e-6) - kPi * kPi / 12.0) < 1e-4);
  // N = 2: V = (2x/pi)^2, so S = (pi/4)(pi/2)
  CHECK(std::abs(pl::scaled_box_S(0.25) - kPi * kPi / 8.0) < 1e-13);
  // monotone approach from above once beta is small
  double last = pl::scaled_box_S(0.05);
  for (double b : {0.01, 1e-3, 1e-4, 1e-5}) {
    const double v = pl::scaled_box_S(b);
    CAPTURE(b);
    CHECK(v < last);
    CHECK(v > kPi * kPi / 12.0);
    last = v;
  }
  CHECK_THROWS_AS(pl::scaled_box_S(0.0), sumrules::DomainError);
}

TEST_CASE("gamma hook reaches the closed forms") {
  const auto p = pl::derive_params(4.0);
  const double shifted = pl::closed_form_S(p, perturbed_gamma);
  // three gammas over two: one net factor of (1 + 1e-3)
  CHECK(std::abs(shifted / pl::closed_form_S(p) - 1.001) < 1e-12);
  CHECK(std::abs(shifted - 0.76330) > 5e-6);
}

}  // TEST_SUITE
