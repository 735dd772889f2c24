#include "sumrules/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "sumrules/errors.hpp"
#include "sumrules/greens.hpp"
#include "sumrules/potential.hpp"
#include "sumrules/spectrum.hpp"

namespace sumrules::verify {

namespace {

using spectrum::Parity;

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 10> kLinearEven{1.01879, 3.24820, 4.82010, 6.16331, 7.37218,
                                             8.48849, 9.53545, 10.52766, 11.47506, 12.38479};
constexpr std::array<double, 10> kLinearOdd{2.33811, 4.08795, 5.52056, 6.78671, 7.94413,
                                            9.02265, 10.04017, 11.00852, 11.93602, 12.82878};
constexpr std::array<double, 10> kLinearDiff{0.55386, 0.06324, 0.02632, 0.01490, 0.00977,
                                             0.00697, 0.00527, 0.00415, 0.00337, 0.00279};
constexpr std::array<double, 5> kQuarticEven{1.060362, 7.455698, 16.261826, 26.528472, 37.923001};
constexpr std::array<double, 5> kQuarticOdd{3.799673, 11.644746, 21.238373, 32.098598, 43.981158};

class Builder {
 public:
  explicit Builder(std::string id) { result_.id = std::move(id); }

  void add(std::string name, double expected, double got, double tol, std::string provenance) {
    Quantity q{std::move(name), expected, got, tol, std::move(provenance), false};
    q.pass = std::abs(got - expected) <= tol;
    result_.quantities.push_back(std::move(q));
  }

  void flag(std::string name, bool expected, bool got, std::string provenance) {
    add(std::move(name), expected ? 1.0 : 0.0, got ? 1.0 : 0.0, 0.0, std::move(provenance));
  }

  CaseResult finish() {
    result_.pass = !result_.error && !result_.quantities.empty() &&
                   std::all_of(result_.quantities.begin(), result_.quantities.end(),
                               [](const Quantity& q) { return q.pass; });
    return std::move(result_);
  }

  void fail(std::string message) { result_.error = std::move(message); }

 private:
  CaseResult result_;
};

std::string index_name(const char* stem, int n) { return std::string(stem) + "[" + std::to_string(n) + "]"; }

void check_spectra(Builder& b, const spectrum::Spectrum& even, const spectrum::Spectrum& odd) {
  b.flag("parity interlacing", true, spectrum::parity_interlaced(even, odd), "exact");
  b.flag("node counts certified", true, spectrum::nodes_certified(even) && spectrum::nodes_certified(odd),
         "exact");
}

void check_general(Builder& b, const greens::ZeroEnergySolutions& z) {
  b.add("Wronskian deviation", 0.0, greens::wronskian_deviation(z), 1e-8, "exact");
}

void airy_case(Builder& b, const RunOptions& o) {
  const auto p = powerlaw::derive_params(1.0);
  const auto zeros = specialfn::airy_zero_table(10);
  double partial = 0.0;
  for (int n = 0; n < 10; ++n) {
    const double e = zeros.ai_prime_zeros[n];
    const double d = zeros.ai_zeros[n];
    b.add(index_name("lambda_even", n), kLinearEven[n], e, tolerance::five_decimals, "published table");
    b.add(index_name("lambda_odd", n), kLinearOdd[n], d, tolerance::five_decimals, "published table");
    b.add(index_name("inverse difference", n), kLinearDiff[n], 1.0 / e - 1.0 / d, tolerance::five_decimals,
          "published table");
    partial += 1.0 / e - 1.0 / d;
  }
  b.add("partial difference sum n=0..9", 0.691, partial, 1e-3, "published value");
  const double tail = spectrum::wkb_difference_tail(p, 10.5);
  b.add("difference tail from n=10.5", 0.037, tail, 5e-4, "published value");
  const double exact = powerlaw::closed_form_S(p, o.gamma);
  b.add("closed form S", 0.729, exact, 5e-4, "published value");
  b.add("S estimate", exact, partial + tail, tolerance::airy, "closed form");

  const PotentialSpec spec(PowerLawPotential{1.0, 1.0});
  const auto even = spectrum::solve_spectrum(spec, Parity::even, 10);
  const auto odd = spectrum::solve_spectrum(spec, Parity::odd, 10);
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    worst = std::max(worst, std::abs(even.eigenvalues[n] - zeros.ai_prime_zeros[n]));
    worst = std::max(worst, std::abs(odd.eigenvalues[n] - zeros.ai_zeros[n]));
  }
  b.add("shooting vs Airy zeros, max deviation", 0.0, worst, 1e-8, "Airy zeros");
  check_spectra(b, even, odd);
  const auto report = spectrum::assemble_report(spec, 10, 1);
  b.add("report S estimate (k=10)", exact, report.S_estimate, tolerance::airy, "closed form");
}

void sho_case(Builder& b, const RunOptions& o) {
  const auto p = powerlaw::derive_params(2.0);
  const double quarter_pi = kPi / 4.0;
  b.add("closed form S", quarter_pi, powerlaw::closed_form_S(p, o.gamma), tolerance::closed_form, "exact");
  b.add("quadrature S", quarter_pi, greens::sum_rule_S_by_quadrature(p, o.quad_tol), tolerance::closed_form,
        "exact");

  const PotentialSpec spec(PowerLawPotential{2.0, 1.0});
  const auto even = spectrum::solve_spectrum(spec, Parity::even, 40);
  const auto odd = spectrum::solve_spectrum(spec, Parity::odd, 40);
  std::vector<double> terms;
  for (double lambda : spectrum::merge_ladders(even, odd)) terms.push_back(1.0 / lambda);
  b.add("accelerated alternating sum", quarter_pi, spectrum::accelerated_alternating_sum(terms), 1e-3, "exact");
  check_spectra(b, even, odd);

  const auto z = greens::build_zero_energy_solutions(spec);
  const auto sums = greens::general_sum_rules(z);
  b.add("Green's function S", quarter_pi, sums.S, tolerance::closed_form, "exact");
  b.flag("S1 divergent", true, sums.S1_divergent, "exact");
  b.flag("S2 divergent", true, sums.S2_divergent, "exact");
  check_general(b, z);
}

void sho_shifted_case(Builder& b, const RunOptions&) {
  const PotentialSpec spec(ShiftedOscillator{});
  const auto even = spectrum::solve_spectrum(spec, Parity::even, 11);
  const auto odd = spectrum::solve_spectrum(spec, Parity::odd, 10);
  const auto merged = spectrum::merge_ladders(even, odd);
  double worst = std::abs(even.eigenvalues.back() - 42.0);
  for (std::size_t n = 0; n < merged.size(); ++n) worst = std::max(worst, std::abs(merged[n] - (2.0 * n + 2.0)));
  b.add("eigenvalues 2n+2, n<=20, max deviation", 0.0, worst, 1e-8, "exact");
  check_spectra(b, even, odd);

  const auto z = greens::build_zero_energy_solutions(spec);
  const auto sums = greens::general_sum_rules(z);
  const double ln2 = std::log(2.0);
  b.add("Green's function S", ln2 / 2.0, sums.S, tolerance::closed_form, "exact");
  b.flag("S1 divergent", true, sums.S1_divergent, "exact");
  b.flag("S2 divergent", true, sums.S2_divergent, "exact");
  b.add("erf integral identity", ln2, greens::erf_integral_identity(), tolerance::closed_form, "exact");
  b.add("decay coefficient c", -2.0 / std::sqrt(kPi), z.c, tolerance::closed_form, "exact");
  b.add("G2(0,0)", std::sqrt(kPi) / 2.0, greens::general_greens(z, 0, 0, greens::Which::G2),
        tolerance::closed_form, "exact");
  b.add("second-order sum, even", kPi * kPi / 32.0, greens::second_order_sum(z, Parity::even), 1e-6, "exact");
  b.add("second-order sum, odd", kPi * kPi / 96.0, greens::second_order_sum(z, Parity::odd), 1e-6, "exact");
  b.add("compact form residual", 0.0, greens::compact_form_check(z, greens::reference_sums(spec)).max_residual,
        1e-6, "exact");
  check_general(b, z);
}

void quartic_case(Builder& b, const RunOptions& o) {
  const auto p = powerlaw::derive_params(4.0);
  const PotentialSpec spec(PowerLawPotential{4.0, 1.0});
  const int k = o.quartic_terms;
  const auto even = spectrum::solve_spectrum(spec, Parity::even, std::max(k + 1, 5));
  const auto odd = spectrum::solve_spectrum(spec, Parity::odd, std::max(k + 1, 5));
  for (int n = 0; n < 5; ++n) {
    b.add(index_name("lambda_even", n), kQuarticEven[n], even.eigenvalues[n],
          tolerance::table_relative * kQuarticEven[n], "published table");
    b.add(index_name("lambda_odd", n), kQuarticOdd[n], odd.eigenvalues[n],
          tolerance::table_relative * kQuarticOdd[n], "published table");
  }
  check_spectra(b, even, odd);

  const auto report = spectrum::assemble_report(spec, k, 1);
  if (k == 4) {
    b.add("partial S1", 0.45003, report.partial_S1, 1e-5, "published value");
    b.add("partial S2", 1.2027580, report.partial_S2, 1e-5, "published eigenvalues (printed sum is inconsistent)");
    b.add("tail S1", 0.31349, *report.tail_S1, 1e-5, "published value");
    b.add("tail S2", 0.3241292, *report.tail_S2, 1e-5, "published formula (printed tail is inconsistent)");
  }
  b.add("S1 estimate", 0.76352, report.partial_S1 + *report.tail_S1, tolerance::quartic, "published value");
  b.add("S2 estimate", 1.52679, report.partial_S2 + *report.tail_S2, tolerance::quartic, "published value");
  b.add("S estimate", 0.76327, report.S_estimate, tolerance::quartic, "published value");

  const double exact = powerlaw::closed_form_S(p, o.gamma);
  b.add("closed form S", 0.76330, exact, tolerance::five_decimals, "published value");
  b.add("quadrature S", exact, greens::sum_rule_S_by_quadrature(p, o.quad_tol), tolerance::closed_form,
        "closed form");

  const auto z = greens::build_zero_energy_solutions(spec);
  const auto sums = greens::general_sum_rules(z);
  b.add("Green's function S1", exact, sums.S1.value_or(NAN), 1e-6, "closed form");
  b.add("Green's function S", exact, sums.S, 1e-6, "closed form");
  b.add("Green's function S2 / 2", exact, 0.5 * sums.S2.value_or(NAN), 1e-6, "closed form");

  const auto levels = std::span<const double>(even.eigenvalues).first(static_cast<std::size_t>(k) + 1);
  const double spectral2 = spectrum::partial_inverse_sum(levels, 2) + spectrum::wkb_tail(p, k, Parity::even, 2);
  b.add("second-order sum, even", spectral2, greens::second_order_sum(z, Parity::even), 1e-4,
        "partial sum with tail");
  b.add("compact form residual", 0.0, greens::compact_form_check(z, greens::reference_sums(spec)).max_residual,
        1e-6, "closed form");
  check_general(b, z);
}

void box_case(Builder& b, const RunOptions& o) {
  const double pi2 = kPi * kPi;
  const auto sums = powerlaw::box_limit_sums();
  b.add("closed form S1", pi2 / 24.0, *sums.S1, tolerance::box_exact, "exact");
  b.add("closed form S2", pi2 / 8.0, *sums.S2, tolerance::box_exact, "exact");
  b.add("closed form S", pi2 / 12.0, sums.S, tolerance::box_exact, "exact");
  b.add("scaled limit at beta=1e-6", pi2 / 12.0, powerlaw::scaled_box_S(1e-6, o.gamma), 1e-4, "exact");

  const PotentialSpec spec(BoxPotential{kPi / 2.0});
  const auto z = greens::build_zero_energy_solutions(spec);
  const auto g = greens::general_sum_rules(z);
  b.add("Green's function S1", pi2 / 24.0, g.S1.value_or(NAN), tolerance::box_exact, "exact");
  b.add("Green's function S2", pi2 / 8.0, g.S2.value_or(NAN), tolerance::box_exact, "exact");
  b.add("Green's function S", pi2 / 12.0, g.S, tolerance::box_exact, "exact");

  const double pi4 = pi2 * pi2;
  b.add("second-order sum, odd", pi4 / 1440.0, greens::second_order_sum(z, Parity::odd), 1e-6, "exact");
  b.add("second-order sum, even", pi4 / 96.0, greens::second_order_sum(z, Parity::even), 1e-6, "exact");

  const auto odd = spectrum::solve_spectrum(spec, Parity::odd, 10000);
  const auto model = *spectrum::ladder_model(spec);
  b.add("odd ladder sum of lambda^-2, 10000 terms with tail", pi4 / 1440.0,
        spectrum::partial_inverse_sum(odd, 2) + spectrum::ladder_tail(model, 9999, Parity::odd, 2), 1e-9,
        "exact");
  b.add("report S estimate (k=50)", pi2 / 12.0, spectrum::assemble_report(spec, 50, 1).S_estimate,
        tolerance::closed_form, "exact");
}

void powerlaw_case(Builder& b, double N, const RunOptions& o) {
  const auto p = powerlaw::derive_params(N);
  const double exact = powerlaw::closed_form_S(p, o.gamma);
  b.add("quadrature S", exact, greens::sum_rule_S_by_quadrature(p, o.quad_tol), tolerance::closed_form,
        "closed form");
  b.add("diagonal integral of G2 - G1", exact, greens::diagonal_difference_integral(p), tolerance::closed_form,
        "closed form");
  const auto z = greens::build_zero_energy_solutions(PotentialSpec(PowerLawPotential{N, 1.0}));
  const auto g = greens::general_sum_rules(z);
  b.add("Green's function S", exact, g.S, 1e-6, "closed form");
  if (powerlaw::ladder_sum_diverges(p, 1)) {
    b.flag("S1 divergent", true, g.S1_divergent, "exact");
    b.flag("S2 divergent", true, g.S2_divergent, "exact");
  } else {
    const double s1 = powerlaw::closed_form_S1(p, o.gamma);
    const double s2 = powerlaw::closed_form_S2(p, o.gamma);
    b.add("S2 - S1", exact, s2 - s1, 1e-12, "closed form");
    b.add("S1 gamma-ratio form", s1, powerlaw::closed_form_S1_gamma_ratio(p, o.gamma), 1e-12, "closed form");
    b.add("S2 gamma-ratio form", s2, powerlaw::closed_form_S2_gamma_ratio(p, o.gamma), 1e-12, "closed form");
    b.add("Green's function S1", s1, g.S1.value_or(NAN), 1e-6, "closed form");
    b.add("Green's function S2", s2, g.S2.value_or(NAN), 1e-6, "closed form");
  }
  const auto sc = greens::power_law_structure_check(p);
  b.add("slope jump error", 0.0, sc.jump_error, 1e-6, "exact");
  b.add("G1(0,y)", 0.0, sc.dirichlet_error, 1e-8, "exact");
  b.add("dG2/dx(0,y)", 0.0, sc.neumann_error, 1e-8, "exact");
  b.add("zero-energy equation residual", 0.0, sc.equation_residual, 1e-5, "exact");
  check_general(b, z);
}

void general_case(Builder& b, std::string_view text) {
  const PotentialSpec spec = parse_potential(text);
  const auto ref = greens::reference_sums(spec);
  const bool exact = ref.source == "closed form";
  const double tol = exact ? 1e-6 : 1e-3;
  const auto z = greens::build_zero_energy_solutions(spec);
  const auto g = greens::general_sum_rules(z);
  if (ref.S) b.add("Green's function S", *ref.S, g.S, tol, ref.source);
  if (ref.S1 && g.S1) b.add("Green's function S1", *ref.S1, *g.S1, tol, ref.source);
  if (ref.S2 && g.S2) b.add("Green's function S2", *ref.S2, *g.S2, tol, ref.source);
  const auto compact = greens::compact_form_check(z, ref);
  const double compact_tol = exact ? 1e-6 : 2.0 * std::abs(z.c) * tol / std::abs(ref.S.value_or(1.0));
  b.add("compact form residual", 0.0, compact.max_residual, compact_tol, ref.source);
  check_general(b, z);
}

// "powerlaw(3.5)" -> "3.5"
std::optional<std::string_view> argument(std::string_view id, std::string_view head) {
  if (id.size() < head.size() + 2 || id.substr(0, head.size()) != head || id[head.size()] != '(' ||
      id.back() != ')')
    return std::nullopt;
  return id.substr(head.size() + 1, id.size() - head.size() - 2);
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

}  // namespace

std::vector<std::string> default_case_ids() {
  return {"airy", "sho", "sho_shifted", "quartic", "box", "powerlaw(3)", "powerlaw(6)"};
}

CaseResult run_case(std::string_view id, const RunOptions& options) {
  Builder b{std::string(id)};
  std::function<void()> body;
  if (id == "airy") {
    body = [&] { airy_case(b, options); };
  } else if (id == "sho") {
    body = [&] { sho_case(b, options); };
  } else if (id == "sho_shifted") {
    body = [&] { sho_shifted_case(b, options); };
  } else if (id == "quartic") {
    body = [&] { quartic_case(b, options); };
  } else if (id == "box") {
    body = [&] { box_case(b, options); };
  } else if (auto arg = argument(id, "powerlaw")) {
    double N = 0.0;
    try {
      std::size_t used = 0;
      N = std::stod(std::string(*arg), &used);
      if (used != arg->size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("bad exponent in case id '" + std::string(id) + "'");
    }
    body = [&b, N, &options] { powerlaw_case(b, N, options); };
  } else if (auto spec = argument(id, "general")) {
    (void)parse_potential(*spec);  // usage errors surface before running
    body = [&b, spec] { general_case(b, *spec); };
  } else {
    throw UsageError("unknown verification case '" + std::string(id) + "'");
  }
  try {
    body();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    b.fail(e.what());
  }
  return b.finish();
}

Report run_all(const RunOptions& options, const std::vector<std::string>& ids) {
  Report r;
  for (const auto& id : ids) r.cases.push_back(run_case(id, options));
  r.pass = std::all_of(r.cases.begin(), r.cases.end(), [](const CaseResult& c) { return c.pass; });
  return r;
}

nlohmann::json to_json(const CaseResult& c) {
  nlohmann::json j;
  j["case"] = c.id;
  j["quantities"] = nlohmann::json::array();
  for (const auto& q : c.quantities) {
    j["quantities"].push_back({{"name", q.name},
                               {"expected", q.expected},
                               {"got", q.got},
                               {"tol", q.tol},
                               {"provenance", q.provenance},
                               {"pass", q.pass}});
  }
  if (c.error) j["error"] = *c.error;
  j["pass"] = c.pass;
  return j;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["cases"] = nlohmann::json::array();
  for (const auto& c : r.cases) j["cases"].push_back(to_json(c));
  j["pass"] = r.pass;
  return j;
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  out << "case,quantity,expected,got,tol,provenance,pass\n" << std::setprecision(15);
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  for (const auto& c : r.cases) {
    for (const auto& q : c.quantities)
      out << c.id << ',' << quoted(q.name) << ',' << q.expected << ',' << q.got << ',' << q.tol << ','
          << quoted(q.provenance) << ',' << (q.pass ? "true" : "false") << '\n';
    if (c.error) out << c.id << ',' << quoted("error: " + *c.error) << ",,,,,false\n";
  }
  return out.str();
}

std::string to_table(const Report& r) {
  std::size_t wc = 4, wq = 8;
  for (const auto& c : r.cases) {
    wc = std::max(wc, c.id.size());
    for (const auto& q : c.quantities) wq = std::max(wq, q.name.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(wc)) << "case" << "  " << std::setw(static_cast<int>(wq))
      << "quantity" << "  " << std::setw(17) << "expected" << "  " << std::setw(17) << "got" << "  "
      << std::setw(9) << "tol" << "  result\n";
  for (const auto& c : r.cases) {
    for (const auto& q : c.quantities)
      out << std::setw(static_cast<int>(wc)) << c.id << "  " << std::setw(static_cast<int>(wq)) << q.name << "  "
          << std::setw(17) << format_number(q.expected) << "  " << std::setw(17) << format_number(q.got) << "  "
          << std::setw(9) << format_number(q.tol) << "  " << (q.pass ? "pass" : "FAIL") << '\n';
    if (c.error) out << std::setw(static_cast<int>(wc)) << c.id << "  error: " << *c.error << '\n';
  }
  out << (r.pass ? "all cases pass\n" : "some cases FAIL\n");
  return out.str();
}

}  // namespace sumrules::verify
