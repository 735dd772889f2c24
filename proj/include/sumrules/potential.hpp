#pragma once

// Symmetric confining potentials. Only the half-line x >= 0 is described;
// V(-x) = V(x) holds by construction.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sumrules/powerlaw.hpp"

namespace sumrules {

struct PowerLawPotential {
  double exponent = 2.0;
  double strength = 1.0;
};

/// V(x) = x^2 + 1; eigenvalues 2n + 2.
struct ShiftedOscillator {};

/// V = 0 for |x| < half_width, infinite outside.
struct BoxPotential {
  double half_width = 1.5707963267948966;
};

/// Samples (x_i, V_i) on [0, x_end], ascending x with x_0 = 0. Interpolated
/// by a modified Akima spline; past x_end the last two samples are
/// continued as a power law (only the Green's-function tails look there).
struct TabulatedPotential {
  std::vector<double> x;
  std::vector<double> v;
  std::string source;
};

class PotentialSpec {
 public:
  using Kind = std::variant<PowerLawPotential, ShiftedOscillator, BoxPotential, TabulatedPotential>;

  /// Validates the description; throws DomainError for a non-confining or
  /// malformed potential.
  explicit PotentialSpec(Kind kind, std::optional<double> domain_cutoff = std::nullopt);

  const Kind& kind() const noexcept { return kind_; }
  std::optional<double> domain_cutoff() const noexcept { return cutoff_; }

  bool is_box() const noexcept { return std::holds_alternative<BoxPotential>(kind_); }
  double box_half_width() const;

  /// Present for the power-law kind only.
  std::optional<powerlaw::PowerLawParams> power_law() const;

  /// V(|x|). For the box this is 0 inside and +inf outside.
  double value(double x) const;
  double derivative(double x) const;         // dV/dx for x > 0
  double second_derivative(double x) const;  // d2V/dx2 for x > 0

  /// A lower bound for V on [0, inf).
  double minimum() const;

  /// Largest x at which V is known from data (inf for analytic kinds).
  double data_end() const;

  /// Compact identifier, also accepted by parse_potential for analytic kinds.
  std::string describe() const;

 private:
  struct Spline;
  Kind kind_;
  std::optional<double> cutoff_;
  std::shared_ptr<const Spline> spline_;  // tabulated kind only
  double tail_exponent_ = 0.0;
  double tail_coefficient_ = 0.0;
};

/// Reads two whitespace- or comma-separated columns (x, V). Lines starting
/// with '#' are ignored.
PotentialSpec load_tabulated(const std::filesystem::path& path,
                             std::optional<double> domain_cutoff = std::nullopt);

/// Spec-string grammar:
///   powerlaw:N=<real>[,gamma=<real>] | sho_shifted | box:half_width=<real> | file:<path>
/// Throws UsageError on a malformed string.
PotentialSpec parse_potential(std::string_view text);

}  // namespace sumrules
