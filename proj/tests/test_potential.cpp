#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "sumrules/errors.hpp"
#include "sumrules/potential.hpp"

using namespace sumrules;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("spec strings round-trip") {
  const auto p = parse_potential("powerlaw:N=4");
  REQUIRE(p.power_law().has_value());
  CHECK(p.power_law()->exponent == 4.0);
  CHECK(p.describe() == "powerlaw:N=4");

  const auto g = parse_potential("powerlaw:N=1.5,gamma=2");
  CHECK(g.power_law()->strength == 2.0);
  CHECK(parse_potential(g.describe()).value(1.3) == g.value(1.3));

  const auto s = parse_potential("sho_shifted");
  CHECK(s.describe() == "sho_shifted");
  CHECK_FALSE(s.power_law().has_value());

  const auto b = parse_potential("box:half_width=2");
  CHECK(b.is_box());
  CHECK(b.box_half_width() == 2.0);
  CHECK(b.data_end() == 2.0);
}

TEST_CASE("malformed spec strings are usage errors") {
  CHECK_THROWS_AS(parse_potential("powerlaw:M=3"), UsageError);
  CHECK_THROWS_AS(parse_potential("powerlaw"), UsageError);
  CHECK_THROWS_AS(parse_potential("powerlaw:N=abc"), UsageError);
  CHECK_THROWS_AS(parse_potential("powerlaw:N"), UsageError);
  CHECK_THROWS_AS(parse_potential("box"), UsageError);
  CHECK_THROWS_AS(parse_potential("sho_shifted:x=1"), UsageError);
  CHECK_THROWS_AS(parse_potential("file:"), UsageError);
  CHECK_THROWS_AS(parse_potential("morse:D=1"), UsageError);
  CHECK_THROWS_AS(parse_potential("file:/nonexistent/potential.csv"), UsageError);
}

TEST_CASE("invalid parameters are domain errors") {
  CHECK_THROWS_AS(parse_potential("powerlaw:N=-1"), DomainError);
  CHECK_THROWS_AS(parse_potential("powerlaw:N=2,gamma=0"), DomainError);
  CHECK_THROWS_AS(parse_potential("box:half_width=0"), DomainError);
  CHECK_THROWS_AS(PotentialSpec(ShiftedOscillator{}, -1.0), DomainError);
  CHECK_THROWS_AS(PotentialSpec(ShiftedOscillator{}).box_half_width(), DomainError);
}

TEST_CASE("analytic values and derivatives") {
  const PotentialSpec quartic(PowerLawPotential{4.0, 3.0});
  CHECK(quartic.value(2.0) == doctest::Approx(48.0));
  CHECK(quartic.value(-2.0) == doctest::Approx(48.0));
  CHECK(quartic.derivative(2.0) == doctest::Approx(96.0));
  CHECK(quartic.second_derivative(2.0) == doctest::Approx(144.0));
  CHECK(quartic.minimum() <= 0.0);

  const PotentialSpec sho(ShiftedOscillator{});
  CHECK(sho.value(3.0) == doctest::Approx(10.0));
  CHECK(sho.derivative(3.0) == doctest::Approx(6.0));
  CHECK(sho.second_derivative(3.0) == doctest::Approx(2.0));
  CHECK(sho.minimum() <= 1.0);
  CHECK(std::isinf(sho.data_end()));

  const PotentialSpec box(BoxPotential{1.0});
  CHECK(box.value(0.5) == 0.0);
  CHECK(std::isinf(box.value(1.5)));
}

TEST_CASE("tabulated potential interpolates the sampled oscillator") {
  const auto spec = load_tabulated(std::filesystem::path(SUMRULES_TEST_DATA) / "shifted_oscillator.csv");
  CHECK(spec.data_end() == doctest::Approx(12.0));
  // second-order accurate in the 0.01 sample spacing
  CHECK(spec.value(0.0) == 1.0);
  for (double x : {0.005, 1.234, 5.5, 11.99}) {
    CAPTURE(x);
    CHECK(std::abs(spec.value(x) - (x * x + 1.0)) < 1e-5);
  }
  CHECK(std::abs(spec.derivative(3.3) - 6.6) < 1e-4);
  CHECK(spec.describe().rfind("file:", 0) == 0);
  // power-law continuation past the data
  CHECK(spec.value(20.0) > spec.value(12.0));
}

TEST_CASE("tabulated validation") {
  TabulatedPotential short_table{{0, 1, 2}, {0, 1, 4}, "short"};
  CHECK_THROWS_AS(PotentialSpec{short_table}, DomainError);

  TabulatedPotential offset{{0.5, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 4, 9, 16, 25, 36, 49}, "offset"};
  CHECK_THROWS_AS(PotentialSpec{offset}, DomainError);

  TabulatedPotential unsorted{{0, 1, 3, 2, 4, 5, 6, 7}, {0, 1, 4, 9, 16, 25, 36, 49}, "unsorted"};
  CHECK_THROWS_AS(PotentialSpec{unsorted}, DomainError);

  TabulatedPotential well{{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 4, 9, 16, 25, 20, 10}, "well"};
  CHECK_THROWS_AS(PotentialSpec{well}, DomainError);

  TabulatedPotential mismatch{{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 4}, "mismatch"};
  CHECK_THROWS_AS(PotentialSpec{mismatch}, DomainError);

  const auto bad = write_temp("sumrules_bad_potential.csv", "# x, V\n0, 1\n0.5 oops\n");
  CHECK_THROWS_AS(load_tabulated(bad), UsageError);
  std::filesystem::remove(bad);
}

}  // TEST_SUITE
