#include "sumrules/powerlaw.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sumrules/errors.hpp"

namespace sumrules::powerlaw {

namespace {

constexpr double kPi = std::numbers::pi;

void require_convergent(const PowerLawParams& p, const char* which) {
  if (ladder_sum_diverges(p, 1)) {
    std::ostringstream msg;
    msg << which << " diverges for N = " << p.exponent << ": the WKB summand decays like n^-"
        << 2.0 * p.exponent / (p.exponent + 2.0) << ", which is not summable for N <= 2";
    throw DivergentSum(msg.str());
  }
}

// beta^{2-4 beta} Gamma(3b) Gamma(2b)^2 / (Gamma(4b) Gamma(1-b)), unscaled.
double s_gamma_ratio(double b, GammaFn g) {
  return std::pow(b, 2.0 - 4.0 * b) * g(3.0 * b) * g(2.0 * b) * g(2.0 * b) /
         (g(4.0 * b) * g(1.0 - b));
}

}  // namespace

PowerLawParams derive_params(double exponent, double gamma_strength) {
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw DomainError("power law exponent N must be positive and finite");
  if (!(gamma_strength > 0.0) || !std::isfinite(gamma_strength))
    throw DomainError("power law strength must be positive and finite");
  PowerLawParams p;
  p.exponent = exponent;
  p.strength = gamma_strength;
  p.nu = 2.0 / (exponent + 2.0);
  p.beta = 1.0 / (exponent + 2.0);
  return p;
}

double strength_factor(const PowerLawParams& p) {
  if (p.strength == 1.0) return 1.0;
  return std::pow(p.strength, -2.0 * p.beta);
}

double closed_form_S(const PowerLawParams& p, GammaFn g) {
  if (!(p.beta > 0.0 && p.beta < 0.5)) throw DomainError("closed_form_S: beta must lie in (0, 1/2)");
  return s_gamma_ratio(p.beta, g) * strength_factor(p);
}

double closed_form_S_unreflected(const PowerLawParams& p, GammaFn g) {
  const double b = p.beta;
  if (!(b > 0.0 && b < 0.5)) throw DomainError("closed_form_S: beta must lie in (0, 1/2)");
  const double v = std::pow(b, 2.0 - 4.0 * b) * g(3.0 * b) * g(2.0 * b) * g(2.0 * b) * g(b) /
                   g(4.0 * b) * std::sin(kPi * b) / kPi;
  return v * strength_factor(p);
}

double closed_form_S1(const PowerLawParams& p, GammaFn g) {
  require_convergent(p, "S1");
  return closed_form_S(p, g) / (2.0 * std::cos(2.0 * kPi * p.beta));
}

double closed_form_S2(const PowerLawParams& p, GammaFn g) {
  require_convergent(p, "S2");
  const double b = p.beta;
  return closed_form_S(p, g) * std::sin(3.0 * kPi * b) /
         (std::sin(kPi * b) * 2.0 * std::cos(2.0 * kPi * b));
}

double closed_form_S1_gamma_ratio(const PowerLawParams& p, GammaFn g) {
  require_convergent(p, "S1");
  const double b = p.beta;
  return std::pow(b, 2.0 - 4.0 * b) * g(3.0 * b) * g(2.0 * b) * g(1.0 - 4.0 * b) /
         (g(1.0 - 2.0 * b) * g(1.0 - b)) * strength_factor(p);
}

double closed_form_S2_gamma_ratio(const PowerLawParams& p, GammaFn g) {
  require_convergent(p, "S2");
  const double b = p.beta;
  return std::pow(b, 2.0 - 4.0 * b) * g(2.0 * b) * g(b) * g(1.0 - 4.0 * b) /
         (g(1.0 - 3.0 * b) * g(1.0 - 2.0 * b)) * strength_factor(p);
}

ClosedFormSums closed_form_sums(const PowerLawParams& p, GammaFn g) {
  ClosedFormSums sums;
  sums.S = closed_form_S(p, g);
  if (ladder_sum_diverges(p, 1)) {
    sums.S1_divergent = true;
    sums.S2_divergent = true;
  } else {
    sums.S1 = closed_form_S1(p, g);
    sums.S2 = closed_form_S2(p, g);
  }
  return sums;
}

bool ladder_sum_diverges(const PowerLawParams& p, int order) {
  // N <= 2 at order 1 is decided on the exponent itself so that N = 2 does
  // not depend on rounding in 2N/(N+2).
  if (order == 1) return p.exponent <= 2.0;
  return order * 2.0 * p.exponent / (p.exponent + 2.0) <= 1.0;
}

double wkb_eigenvalue(const PowerLawParams& p, double n) {
  if (n < 0.0) throw DomainError("wkb_eigenvalue: index must be non-negative");
  const double N = p.exponent;
  const double coeff = std::sqrt(kPi) * (N + 2.0) * specialfn::gamma((N + 2.0) / (2.0 * N)) /
                       (2.0 * specialfn::gamma(1.0 / N));
  return std::pow((n + 0.5) * coeff, 2.0 * N / (N + 2.0)) / strength_factor(p);
}

ClosedFormSums box_limit_sums() {
  const double pi2 = kPi * kPi;
  ClosedFormSums sums;
  sums.S = pi2 / 12.0;
  sums.S1 = pi2 / 24.0;
  sums.S2 = pi2 / 8.0;
  return sums;
}

double scaled_box_S(double beta, GammaFn g) {
  if (!(beta > 0.0 && beta < 0.5)) throw DomainError("scaled_box_S: beta must lie in (0, 1/2)");
  return std::pow(0.5 * kPi * beta, 2.0 - 4.0 * beta) * g(3.0 * beta) * g(2.0 * beta) *
         g(2.0 * beta) / (g(4.0 * beta) * g(1.0 - beta));
}

}  // namespace sumrules::powerlaw
