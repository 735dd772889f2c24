#pragma once

// Parity-resolved eigenvalues of symmetric confining potentials and partial
// inverse-eigenvalue sums completed by WKB tails.

#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumrules/potential.hpp"
#include "sumrules/powerlaw.hpp"

namespace sumrules::spectrum {

/// even: psi'(0) = 0; odd: psi(0) = 0.
enum class Parity { even, odd };

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view text);

struct Spectrum {
  Parity parity = Parity::even;
  std::vector<double> eigenvalues;  // ascending
  std::vector<int> node_counts;     // nodes on (0, inf) of each eigenfunction
  std::vector<double> residuals;    // estimated discretisation error of each eigenvalue
  double bracket_tolerance = 0.0;   // relative width of the final sign-change interval
  double x_max = 0.0;
  double step = 0.0;
  std::string method;
};

/// First `count` eigenvalues of one parity.
///
/// Numerov integration outward from the origin on [0, x_max], bisection on
/// the node count (the count jumps by one exactly at an eigenvalue of the
/// problem truncated at x_max), repeated on a grid of half the step and
/// Richardson-extrapolated. x_max is chosen so that the WKB decay exponent
/// beyond the outermost turning point of the highest requested level is at
/// least 22. The box is solved analytically.
///
/// Throws DomainError for count < 1 and SolverError when an explicit
/// domain cutoff (or the end of tabulated data) leaves the wavefunction
/// undecayed.
Spectrum solve_spectrum(const PotentialSpec& spec, Parity parity, int count);

/// sum_n lambda_n^{-p} over the stored eigenvalues.
double partial_inverse_sum(std::span<const double> eigenvalues, int p);
double partial_inverse_sum(const Spectrum& s, int p);

/// Ladder model lambda(m) = (A (2m + s))^q used for tails: A and q from the
/// WKB formula, s = 1/2 (even) or 3/2 (odd) for power laws.
struct LadderModel {
  double scale = 1.0;     // A
  double power = 1.0;     // q
  double even_offset = 0.5;
  double odd_offset = 1.5;
};

LadderModel wkb_ladder(const powerlaw::PowerLawParams& params);

/// Exact ladders for the box and the shifted oscillator, WKB for power laws;
/// nullopt for tabulated potentials.
std::optional<LadderModel> ladder_model(const PotentialSpec& spec);

/// integral_{k+1/2}^inf lambda(m)^{-p} dm over one parity ladder, where k is
/// the last index summed exactly. Throws DivergentSum when p q <= 1.
double ladder_tail(const LadderModel& model, int k, Parity parity, int p = 1);
double wkb_tail(const powerlaw::PowerLawParams& params, int k, Parity parity, int p = 1);

/// Leading large-n estimate of integral_n^inf (lambda_{2m}^{-p} -
/// lambda_{2m+1}^{-p}) dm = (1/2) (2 A n)^{-p q}. Finite whenever p q > 0.
double ladder_difference_tail(const LadderModel& model, double n, int p = 1);
double wkb_difference_tail(const powerlaw::PowerLawParams& params, double n, int p = 1);

/// sum_i (-1)^i terms[i], accelerated by repeated pairwise averaging of the
/// last partial sums.
double accelerated_alternating_sum(std::span<const double> terms);

/// lambda_0 (even), lambda_1 (odd), lambda_2 (even), ... up to the shorter
/// ladder.
std::vector<double> merge_ladders(const Spectrum& even, const Spectrum& odd);

/// lambda_0^even < lambda_0^odd < lambda_1^even < ...
bool parity_interlaced(const Spectrum& even, const Spectrum& odd);

/// Node count n for the n-th level of every ladder.
bool nodes_certified(const Spectrum& s);

struct SumRuleReport {
  int order = 1;
  int terms = 0;  // last exact index k; k+1 levels per parity are summed
  double partial_S1 = 0.0;
  double partial_S2 = 0.0;
  std::optional<double> tail_S1;
  std::optional<double> tail_S2;
  std::optional<double> tail_S;  // difference tail, used when the ladder tails diverge
  double S_estimate = 0.0;
  std::optional<double> closed_form_ref;
  std::optional<double> abs_error;
};

/// Sums levels 0..k of each parity, completes them with tails and compares
/// with the closed form where one is known (power law and box, p = 1).
/// Without a ladder model S_estimate is the accelerated alternating sum.
SumRuleReport assemble_report(const PotentialSpec& spec, int k, int p);

nlohmann::json to_json(const SumRuleReport& r);

/// CSV with header parity,n,lambda,nodes,residual.
std::string to_csv(std::span<const Spectrum> spectra);

}  // namespace sumrules::spectrum
