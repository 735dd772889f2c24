#pragma once

// Real-argument special functions used by the closed-form sum rules:
// gamma, modified Bessel I/K of fractional order, Airy Ai/Ai' and their
// zeros, and the error function. Everything is double precision, pure and
// reentrant.

#include <vector>

namespace sumrules::specialfn {

/// ln Γ(x) for x > 0. Lanczos approximation (g = 7, 9 terms); relative
/// error of Γ is below 2e-15 on (0, 50], so ln Γ is accurate to ~2e-15
/// absolute. Throws DomainError for x <= 0.
double ln_gamma(double x);

/// Γ(x) for real x that is not a non-positive integer. Uses the reflection
/// formula for x < 1/2.
double gamma(double x);

/// Modified Bessel function I_order(z), order in (-1, 1), z > 0.
///
/// Ascending series for z <= max(12, 2 order^2) (all terms positive, no
/// cancellation), Hankel asymptotic expansion beyond. At the crossover the
/// truncated asymptotic series is accurate to about exp(-2z) ~ 4e-11
/// relative.
double bessel_i(double order, double z);

/// Modified Bessel function K_order(z), order in (0, 1), z > 0.
///
/// For z <= 2 uses K = (pi/2)(I_{-order} - I_{order}) / sin(pi order). For
/// z > 2 that difference cancels catastrophically, so Steed's continued
/// fraction (CF2) is used instead; both branches hold ~1e-14 relative.
double bessel_k(double order, double z);

/// Ai(x) and Ai'(x). Maclaurin series accumulated in long double for
/// |x| <= 8, standard asymptotic expansions outside. Absolute error is
/// below 1e-12 on [-15, 5]. Valid for |x| <= 100.
double airy_ai(double x);
double airy_ai_prime(double x);

enum class AiryKind { function, derivative };

/// Magnitude of the n-th (n >= 0) negative zero of Ai (function) or Ai'
/// (derivative). Newton iteration seeded by the large-order asymptotic
/// series; throws SolverError if |Ai| (or |Ai'|) at the root stays above
/// 1e-12.
double airy_zero(int n, AiryKind kind);

struct AiryZeroTable {
  std::vector<double> ai_zeros;        // -a_s, ascending
  std::vector<double> ai_prime_zeros;  // -a'_s, ascending
};

AiryZeroTable airy_zero_table(int count);

/// Error function, absolute error <= 1e-15.
double erf(double x);

/// Scaled complementary error function exp(x^2) (1 - erf(x)); stable for
/// large positive x where 1 - erf underflows.
double erfcx(double x);

}  // namespace sumrules::specialfn
