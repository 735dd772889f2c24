#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "sumrules/errors.hpp"
#include "sumrules/greens.hpp"
#include "sumrules/potential.hpp"
#include "sumrules/powerlaw.hpp"
#include "sumrules/spectrum.hpp"

using namespace sumrules;
using greens::Which;
using spectrum::Parity;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("greens") {

TEST_CASE("quadrature S equals the closed form") {
  for (double N : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 12.0}) {
    const auto p = powerlaw::derive_params(N);
    CAPTURE(N);
    CHECK(std::abs(greens::sum_rule_S_by_quadrature(p) - powerlaw::closed_form_S(p)) < 1e-8);
  }
  const auto strong = powerlaw::derive_params(4.0, 7.0);
  CHECK(std::abs(greens::sum_rule_S_by_quadrature(strong) - powerlaw::closed_form_S(strong)) < 1e-8);
}

TEST_CASE("direct diagonal integral agrees") {
  for (double N : {1.0, 4.0}) {
    const auto p = powerlaw::derive_params(N);
    CAPTURE(N);
    CHECK(std::abs(greens::diagonal_difference_integral(p) - powerlaw::closed_form_S(p)) < 1e-7);
  }
}

TEST_CASE("unreachable tolerance is reported with an estimate") {
  const auto p = powerlaw::derive_params(4.0);
  try {
    (void)greens::sum_rule_S_by_quadrature(p, 1e-30);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::abs(e.estimate() - powerlaw::closed_form_S(p)) < 1e-8);
    CHECK(e.error_bound() >= 0.0);
  }
}

TEST_CASE("erf identity gives ln 2") {
  CHECK(std::abs(greens::erf_integral_identity() - std::log(2.0)) < 1e-8);
  CHECK(std::abs(greens::erf_identity_integrand(0.0) - std::sqrt(kPi)) < 1e-14);
  // e^{x^2} erfc(x)^2 ~ e^{-x^2} / (pi x^2)
  const double x = 6.0;
  CHECK(std::abs(greens::erf_identity_integrand(x) / (std::exp(-x * x) / (std::sqrt(kPi) * x * x)) - 1.0) < 0.05);
}

TEST_CASE("Bessel-form diagonal against Boost") {
  const auto p = powerlaw::derive_params(4.0);
  for (double x : {0.1, 0.7, 1.5, 3.0}) {
    const double z = p.nu * std::pow(x, 1.0 / p.nu);
    const double k = boost::math::cyl_bessel_k(p.beta, z);
    CAPTURE(x);
    CHECK(std::abs(greens::power_law_greens_diag(p, x, Which::G1) -
                   p.nu * x * boost::math::cyl_bessel_i(p.beta, z) * k) < 1e-12);
    CHECK(std::abs(greens::power_law_greens_diag(p, x, Which::G2) -
                   p.nu * x * boost::math::cyl_bessel_i(-p.beta, z) * k) < 1e-12);
    CHECK(std::abs(greens::power_law_greens_diag(p, x, Which::difference) -
                   4.0 * p.beta / kPi * std::sin(kPi * p.beta) * x * k * k) < 1e-12);
    CHECK(std::abs(greens::power_law_greens(p, x, x, Which::G1) - greens::power_law_greens_diag(p, x, Which::G1)) <
          1e-12);
  }
  CHECK_THROWS_AS(greens::power_law_greens_diag(p, 0.0, Which::G1), DomainError);
  CHECK_THROWS_AS(greens::power_law_greens(p, -1.0, 1.0, Which::G1), DomainError);
}

TEST_CASE("power-law Green's function is symmetric") {
  const auto p = powerlaw::derive_params(3.0, 2.0);
  for (auto which : {Which::G1, Which::G2}) {
    CHECK(greens::power_law_greens(p, 0.3, 1.7, which) == doctest::Approx(greens::power_law_greens(p, 1.7, 0.3, which)));
  }
}

TEST_CASE("structure checks") {
  for (double N : {1.0, 2.0, 4.0, 6.0}) {
    const auto sc = greens::power_law_structure_check(powerlaw::derive_params(N));
    CAPTURE(N);
    CHECK(sc.jump_error < 1e-6);
    CHECK(sc.dirichlet_error < 1e-8);
    CHECK(sc.neumann_error < 1e-8);
    CHECK(sc.equation_residual < 1e-5);
  }
}

TEST_CASE("shifted oscillator from zero-energy solutions") {
  const PotentialSpec spec(ShiftedOscillator{});
  const auto z = greens::build_zero_energy_solutions(spec);
  // Phi2 ~ erfc-type decay: c = -2 / sqrt(pi)
  CHECK(std::abs(z.c + 2.0 / std::sqrt(kPi)) < 1e-8);
  CHECK(z.c_change < 1e-8);
  CHECK(greens::wronskian_deviation(z) < 1e-8);

  const auto sums = greens::general_sum_rules(z);
  CHECK(std::abs(sums.S - std::log(2.0) / 2.0) < 1e-8);
  CHECK(sums.S1_divergent);
  CHECK(sums.S2_divergent);
  CHECK_FALSE(sums.S1.has_value());
  CHECK(sums.S_error < 1e-9);
}

TEST_CASE("quartic from zero-energy solutions matches the closed forms") {
  const PotentialSpec spec(PowerLawPotential{4.0, 1.0});
  const auto p = *spec.power_law();
  const auto z = greens::build_zero_energy_solutions(spec);
  CHECK(greens::wronskian_deviation(z) < 1e-8);
  const auto sums = greens::general_sum_rules(z);
  REQUIRE(sums.S1.has_value());
  REQUIRE(sums.S2.has_value());
  CHECK(std::abs(*sums.S1 - powerlaw::closed_form_S1(p)) < 1e-6);
  CHECK(std::abs(*sums.S2 - powerlaw::closed_form_S2(p)) < 1e-6);
  CHECK(std::abs(sums.S - powerlaw::closed_form_S(p)) < 1e-8);
  CHECK(sums.tail > 0.0);
}

TEST_CASE("Green's-function S1 equals the spectral sum") {
  const PotentialSpec spec(PowerLawPotential{4.0, 1.0});
  const auto report = spectrum::assemble_report(spec, 20, 1);
  const auto sums = greens::general_sum_rules(greens::build_zero_energy_solutions(spec));
  // the tail is WKB-accurate to a few parts in 1e5 at k = 20
  CHECK(std::abs(report.partial_S1 + *report.tail_S1 - *sums.S1) < 2e-5);
  CHECK(std::abs(report.partial_S2 + *report.tail_S2 - *sums.S2) < 2e-5);
}

TEST_CASE("box is exact") {
  const PotentialSpec box(BoxPotential{kPi / 2.0});
  const auto z = greens::build_zero_energy_solutions(box);
  CHECK(z.analytic);
  CHECK(std::abs(z.c + 2.0 / kPi) < 1e-15);
  const auto sums = greens::general_sum_rules(z);
  CHECK(std::abs(*sums.S1 - kPi * kPi / 24.0) < 1e-10);
  CHECK(std::abs(*sums.S2 - kPi * kPi / 8.0) < 1e-10);
  CHECK(std::abs(sums.S - kPi * kPi / 12.0) < 1e-10);
  CHECK(std::abs(greens::second_order_sum(z, Parity::odd) - std::pow(kPi, 4) / 1440.0) < 1e-6);
  CHECK(std::abs(greens::second_order_sum(z, Parity::even) - std::pow(kPi, 4) / 96.0) < 1e-6);
}

TEST_CASE("second-order sums") {
  const PotentialSpec sho(ShiftedOscillator{});
  const double even = greens::second_order_sum(sho, Parity::even);
  const double odd = greens::second_order_sum(sho, Parity::odd);
  // levels 4n + 2 and 4n + 4
  CHECK(std::abs(even - kPi * kPi / 32.0) < 1e-7);
  CHECK(std::abs(odd - kPi * kPi / 96.0) < 1e-7);

  const PotentialSpec quartic(PowerLawPotential{4.0, 1.0});
  const auto report = spectrum::assemble_report(quartic, 4, 2);
  CHECK(std::abs(greens::second_order_sum(quartic, Parity::even) - (report.partial_S2 + *report.tail_S2)) < 1e-4);

  CHECK_THROWS_AS(greens::second_order_sum(PotentialSpec(PowerLawPotential{0.5, 1.0}), Parity::even), DivergentSum);
}

TEST_CASE("compact form residuals") {
  for (const auto& spec : {PotentialSpec(ShiftedOscillator{}), PotentialSpec(PowerLawPotential{4.0, 1.0})}) {
    const auto r = greens::compact_form_check(spec);
    CAPTURE(spec.describe());
    CHECK(r.max_residual <= 1e-6);
    CHECK(r.pairs.size() == 3);
  }
  const auto sho = greens::compact_form_check(PotentialSpec(ShiftedOscillator{}));
  int applicable = 0;
  for (const auto& pair : sho.pairs) applicable += pair.residual.has_value();
  CHECK(applicable == 1);
}

TEST_CASE("reference sums") {
  const auto pl = greens::reference_sums(PotentialSpec(PowerLawPotential{4.0, 1.0}));
  CHECK(pl.source == "closed form");
  CHECK(pl.S1.has_value());
  const auto sho = greens::reference_sums(PotentialSpec(ShiftedOscillator{}));
  CHECK(std::abs(*sho.S - std::log(2.0) / 2.0) < 1e-15);
  CHECK_FALSE(sho.S1.has_value());
}

TEST_CASE("tabulated oscillator through the Green's functions") {
  const auto spec = load_tabulated(std::filesystem::path(SUMRULES_TEST_DATA) / "shifted_oscillator.csv");
  const auto z = greens::build_zero_energy_solutions(spec);
  CHECK(greens::wronskian_deviation(z) < 1e-8);
  const auto sums = greens::general_sum_rules(z);
  CHECK(std::abs(sums.S - std::log(2.0) / 2.0) < 1e-6);
  CHECK(sums.S1_divergent);
  const auto ref = greens::reference_sums(spec);
  CHECK(ref.source == "accelerated spectral sum");
  CHECK(std::abs(*ref.S - std::log(2.0) / 2.0) < 1e-3);
}

TEST_CASE("general Green's function and diagonal output") {
  const auto z = greens::build_zero_energy_solutions(PotentialSpec(PowerLawPotential{4.0, 1.0}));
  const auto p = powerlaw::derive_params(4.0);
  const std::size_t i = z.grid.size() / 40;
  const std::size_t j = z.grid.size() / 20;
  for (auto which : {Which::G1, Which::G2}) {
    const double want = greens::power_law_greens(p, z.grid[i], z.grid[j], which);
    CHECK(std::abs(greens::general_greens(z, i, j, which) - want) < 1e-8 * std::max(1.0, std::abs(want)));
    CHECK(greens::general_greens(z, i, j, which) == doctest::Approx(greens::general_greens(z, j, i, which)));
  }
  const auto diag = greens::greens_diagonal(z);
  REQUIRE(diag.grid.size() == diag.difference.size());
  const auto csv = greens::to_csv(diag);
  CHECK(csv.rfind("x,g1,g2,difference\n", 0) == 0);
}

}  // TEST_SUITE
