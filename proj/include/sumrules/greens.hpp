#pragma once

// Zero-energy Green's functions of L = -d^2/dx^2 + V on the half line.
//
// G1 (Dirichlet at 0) generates the odd ladder, G2 (Neumann at 0) the even
// one. Both are built from xi1 (value 1, slope 0), xi2 (value 0, slope 1)
// and the decaying combination Phi2 = xi1 + c xi2:
//   G1(x, y) = xi2(x<) Phi2(x>),   G2(x, y) = -xi1(x<) Phi2(x>) / c.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumrules/potential.hpp"
#include "sumrules/powerlaw.hpp"
#include "sumrules/spectrum.hpp"

namespace sumrules::greens {

enum class Which { G1, G2, difference };

/// Bessel form on the diagonal for V = gamma x^N (x > 0):
///   G1 = nu x I_beta(z) K_beta(z), G2 = nu x I_-beta(z) K_beta(z),
///   z = nu x^(1/nu), rescaled for gamma != 1.
/// difference = G2 - G1 = (4 beta / pi) sin(pi beta) x K_beta(z)^2.
double power_law_greens_diag(const powerlaw::PowerLawParams& params, double x, Which which);

/// Full G1(x, y) or G2(x, y) for the power law; x, y >= 0.
double power_law_greens(const powerlaw::PowerLawParams& params, double x, double y, Which which);

/// S = integral of the diagonal difference, by Gauss-Kronrod after the
/// substitution t = z^(2 beta) which leaves a bounded integrand on a finite
/// interval. Throws NumericError if the requested tolerance is not reached.
double sum_rule_S_by_quadrature(const powerlaw::PowerLawParams& params, double rel_tol = 1e-12);

/// The same integral taken directly in x over [0, inf) with the diagonal
/// difference evaluated from both Bessel products.
double diagonal_difference_integral(const powerlaw::PowerLawParams& params);

/// sqrt(pi) * integral_0^inf e^{x^2} erfc(x)^2 dx, expected ln 2.
double erf_integral_identity();
double erf_identity_integrand(double x);

/// One solution sampled on the shared grid. Values are stored scaled so
/// that nothing overflows: growing solutions as y e^{-sigma}, the decaying
/// one as y e^{+sigma}, with sigma(x) = integral_0^x sqrt(max(V, 0) + 1).
struct ZeroEnergySolution {
  enum class Init { value, slope, decaying };
  Init init = Init::value;
  int scale_sign = -1;  // -1: y e^{-sigma}; +1: y e^{+sigma}
  std::vector<double> values;
  std::vector<double> derivatives;
};

struct ZeroEnergySolutions {
  explicit ZeroEnergySolutions(PotentialSpec s) : spec(std::move(s)) {}

  PotentialSpec spec;
  std::vector<double> grid;
  std::vector<double> sigma;
  ZeroEnergySolution xi1, xi2, phi2;
  std::vector<double> u1, u2;  // e^{-2 sigma} integral_0^x xi^2, for the second-order sums
  double c = 0.0;
  double c_change = 0.0;        // relative change of c when the outer radius is pushed out
  std::size_t quad_end = 0;     // grid index where the WKB tail takes over
  bool analytic = false;        // box: exact polynomial solutions

  double value(const ZeroEnergySolution& s, std::size_t i) const;
  double derivative(const ZeroEnergySolution& s, std::size_t i) const;
};

/// Integrates xi1, xi2 outward and the decaying solution inward with
/// Runge-Kutta-Fehlberg 7(8) on a grid of step 0.02 / sqrt(V + 1). c is read
/// off the inward solution at the origin and must agree to 1e-8 with a
/// second run whose outer radius is pushed further out (SolverError
/// otherwise).
ZeroEnergySolutions build_zero_energy_solutions(const PotentialSpec& spec);

/// W(f, g) = f g' - f' g at every grid point.
std::vector<double> wronskian(const ZeroEnergySolutions& s, const ZeroEnergySolution& f,
                              const ZeroEnergySolution& g);

/// Largest deviation of W(xi1, xi2) from 1, W(xi2, Phi2) from -1 and
/// W(xi1, Phi2) from c. W(xi1, xi2) is only checked while sigma <= 8,
/// beyond which it is a difference of two exponentially large terms.
double wronskian_deviation(const ZeroEnergySolutions& s);

struct QuadratureValue {
  double value = 0.0;
  double error = 0.0;
};

struct GeneralSums {
  std::optional<double> S1, S2;
  double S = 0.0;
  bool S1_divergent = false;
  bool S2_divergent = false;
  double S1_error = 0.0, S2_error = 0.0, S_error = 0.0;
  double tail = 0.0;  // asymptotic contribution past the last grid point, shared by S1 and S2
};

/// S1 = int xi2 Phi2, S2 = -(1/c) int xi1 Phi2, S = -(1/c) int Phi2^2.
/// S1 and S2 are flagged divergent when the asymptotic diagonal 1/(2 sqrt V)
/// decays no faster than 1/x; S is always finite.
GeneralSums general_sum_rules(const ZeroEnergySolutions& s);

/// Double integral of G(x, y)^2 over the quarter plane: sum of
/// lambda^{-2} over the even (G2) or odd (G1) ladder. Throws DivergentSum
/// when the asymptotic integrand 1/(4 V^{3/2}) is not integrable.
double second_order_sum(const ZeroEnergySolutions& s, spectrum::Parity parity);
double second_order_sum(const PotentialSpec& spec, spectrum::Parity parity);

/// G at grid nodes (i, j) from the stored solutions.
double general_greens(const ZeroEnergySolutions& s, std::size_t i, std::size_t j, Which which);

struct GreensDiagonal {
  std::vector<double> grid;
  std::vector<double> g1_diag;
  std::vector<double> g2_diag;
  std::vector<double> difference;
};

/// Diagonal up to the last quadrature node.
GreensDiagonal greens_diagonal(const ZeroEnergySolutions& s);

/// CSV with header x,g1,g2,difference.
std::string to_csv(const GreensDiagonal& d);

/// Reference values of S1, S2, S that do not come from the Green's functions:
/// closed forms where known, the accelerated spectral sum otherwise.
struct ReferenceSums {
  std::optional<double> S1, S2, S;
  std::string source;
};
ReferenceSums reference_sums(const PotentialSpec& spec);

struct CompactPair {
  std::string name;  // "xi2*Phi2", "xi1*Phi2", "Phi2^2"
  std::optional<double> delta;
  double f0 = 0.0;    // -int_0^inf F
  double fpp0 = 0.0;  // F'(0)
  std::optional<double> residual;  // |f''(0) - f(0)/delta|, absent when delta diverges
};

struct CompactFormResult {
  std::vector<CompactPair> pairs;
  double max_residual = 0.0;
};

/// f(x) = -int_x^inf F satisfies f'' = f / Delta at the origin for
/// (Delta, F) = (-S1, xi2 Phi2), (S2, xi1 Phi2), (S/2, Phi2^2).
CompactFormResult compact_form_check(const PotentialSpec& spec);
CompactFormResult compact_form_check(const ZeroEnergySolutions& s, const ReferenceSums& ref);

/// Finite-difference checks of the Bessel-form Green's functions: slope
/// jump across x = y, G1(0, y) = 0, dG2/dx(0, y) = 0 and the zero-energy
/// equation away from the diagonal. Each field is the largest error over a
/// handful of source points y.
struct StructureCheck {
  double jump_error = 0.0;
  double dirichlet_error = 0.0;
  double neumann_error = 0.0;
  double equation_residual = 0.0;
};
StructureCheck power_law_structure_check(const powerlaw::PowerLawParams& params);

}  // namespace sumrules::greens
