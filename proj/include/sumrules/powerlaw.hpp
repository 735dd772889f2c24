#pragma once

// Closed-form eigenvalue sums and WKB asymptotics for V(x) = gamma |x|^N.

#include <optional>

#include "sumrules/specialfn.hpp"

namespace sumrules::powerlaw {

/// Exponent, strength and the derived Bessel parameters nu = 2/(N+2) and
/// beta = 1/(N+2) of the zero-energy transform.
struct PowerLawParams {
  double exponent = 1.0;
  double strength = 1.0;
  double nu = 2.0 / 3.0;
  double beta = 1.0 / 3.0;
};

/// Throws DomainError unless N > 0 and gamma_strength > 0.
PowerLawParams derive_params(double exponent, double gamma_strength = 1.0);

/// Gamma-function hook. Everything below evaluates its gamma ratios through
/// this pointer so a caller can substitute a perturbed implementation.
using GammaFn = double (*)(double);

/// Factor gamma^{-2/(N+2)} by which every inverse-eigenvalue sum scales.
double strength_factor(const PowerLawParams& p);

/// S = sum (-1)^n / lambda_n, compact gamma-ratio form with the reflection
/// identity already applied. Finite for every N > 0.
double closed_form_S(const PowerLawParams& p, GammaFn g = specialfn::gamma);

/// The same S before the reflection identity is used; agrees with
/// closed_form_S to rounding.
double closed_form_S_unreflected(const PowerLawParams& p, GammaFn g = specialfn::gamma);

/// S1 = sum over odd states 1/lambda_{2n+1} = S / (2 cos 2 pi beta).
/// S2 = sum over even states 1/lambda_{2n} = S sin(3 pi beta) / (sin(pi beta) 2 cos 2 pi beta).
/// Both throw DivergentSum for N <= 2 (the WKB summand decays no faster than
/// 1/n there).
double closed_form_S1(const PowerLawParams& p, GammaFn g = specialfn::gamma);
double closed_form_S2(const PowerLawParams& p, GammaFn g = specialfn::gamma);

/// S1 and S2 written directly as gamma ratios (no reference to S). Used to
/// cross-check the compact forms above.
double closed_form_S1_gamma_ratio(const PowerLawParams& p, GammaFn g = specialfn::gamma);
double closed_form_S2_gamma_ratio(const PowerLawParams& p, GammaFn g = specialfn::gamma);

struct ClosedFormSums {
  double S = 0.0;
  std::optional<double> S1;
  std::optional<double> S2;
  bool S1_divergent = false;
  bool S2_divergent = false;
};

ClosedFormSums closed_form_sums(const PowerLawParams& p, GammaFn g = specialfn::gamma);

/// True when sum_n lambda_n^{-order} diverges over a single parity ladder,
/// i.e. order * 2N/(N+2) <= 1.
bool ladder_sum_diverges(const PowerLawParams& p, int order);

/// Bohr-Sommerfeld estimate of the n-th eigenvalue (global index, even
/// states at even n). Includes the strength scaling.
double wkb_eigenvalue(const PowerLawParams& p, double n);

/// Infinite square well of half-width pi/2: S1 = pi^2/24, S2 = pi^2/8,
/// S = pi^2/12.
ClosedFormSums box_limit_sums();

/// The alternating-sum closed form for the potential (2|x|/pi)^N written
/// in terms of beta = 1/(N+2). Tends to pi^2/12 as beta -> 0.
double scaled_box_S(double beta, GammaFn g = specialfn::gamma);

}  // namespace sumrules::powerlaw
