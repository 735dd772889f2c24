#include "sumrules/potential.hpp"

#include <algorithm>
#include <boost/math/interpolators/makima.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sumrules/errors.hpp"

namespace sumrules {

struct PotentialSpec::Spline {
  boost::math::interpolators::makima<std::vector<double>> interp;
  double x_end;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw UsageError("could not parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

void validate_tabulated(const TabulatedPotential& t) {
  if (t.x.size() != t.v.size()) throw DomainError("tabulated potential: column lengths differ");
  if (t.x.size() < 8) throw DomainError("tabulated potential: need at least 8 samples");
  if (t.x.front() != 0.0) throw DomainError("tabulated potential: samples must start at x = 0");
  for (std::size_t i = 1; i < t.x.size(); ++i)
    if (!(t.x[i] > t.x[i - 1])) throw DomainError("tabulated potential: x must be strictly ascending");
  // Confining: nondecreasing over the last quarter and ending above every
  // earlier value.
  const std::size_t n = t.x.size();
  const std::size_t q = n - std::max<std::size_t>(2, n / 4);
  for (std::size_t i = q + 1; i < n; ++i)
    if (t.v[i] < t.v[i - 1]) throw DomainError("tabulated potential is not confining: V decreases near x_end");
  const double vmax = *std::max_element(t.v.begin(), t.v.end());
  if (t.v.back() < vmax || !(t.v.back() > 0.0))
    throw DomainError("tabulated potential is not confining: V(x_end) is not its maximum");
}

}  // namespace

PotentialSpec::PotentialSpec(Kind kind, std::optional<double> domain_cutoff)
    : kind_(std::move(kind)), cutoff_(domain_cutoff) {
  if (cutoff_ && !(*cutoff_ > 0.0)) throw DomainError("domain cutoff must be positive");
  std::visit(overloaded{
                 [](const PowerLawPotential& p) { (void)powerlaw::derive_params(p.exponent, p.strength); },
                 [](const ShiftedOscillator&) {},
                 [](const BoxPotential& b) {
                   if (!(b.half_width > 0.0) || !std::isfinite(b.half_width))
                     throw DomainError("box half width must be positive");
                 },
                 [this](const TabulatedPotential& t) {
                   validate_tabulated(t);
                   auto xs = t.x;
                   auto vs = t.v;
                   spline_ = std::make_shared<const Spline>(
                       Spline{boost::math::interpolators::makima<std::vector<double>>(std::move(xs), std::move(vs), 0.0),
                              t.x.back()});
                   const std::size_t n = t.x.size();
                   const double x1 = t.x[n - 2], x2 = t.x[n - 1];
                   const double v1 = t.v[n - 2], v2 = t.v[n - 1];
                   if (x1 > 0.0 && v1 > 0.0 && v2 > v1) {
                     tail_exponent_ = std::log(v2 / v1) / std::log(x2 / x1);
                   } else {
                     tail_exponent_ = 2.0;
                   }
                   tail_coefficient_ = v2 / std::pow(x2, tail_exponent_);
                 },
             },
             kind_);
}

double PotentialSpec::box_half_width() const {
  if (const auto* b = std::get_if<BoxPotential>(&kind_)) return b->half_width;
  throw DomainError("not a box potential");
}

std::optional<powerlaw::PowerLawParams> PotentialSpec::power_law() const {
  if (const auto* p = std::get_if<PowerLawPotential>(&kind_))
    return powerlaw::derive_params(p->exponent, p->strength);
  return std::nullopt;
}

double PotentialSpec::value(double x) const {
  x = std::abs(x);
  return std::visit(overloaded{
                        [x](const PowerLawPotential& p) { return p.strength * std::pow(x, p.exponent); },
                        [x](const ShiftedOscillator&) { return x * x + 1.0; },
                        [x](const BoxPotential& b) {
                          return x < b.half_width ? 0.0 : std::numeric_limits<double>::infinity();
                        },
                        [this, x](const TabulatedPotential&) {
                          if (x <= spline_->x_end) return spline_->interp(x);
                          return tail_coefficient_ * std::pow(x, tail_exponent_);
                        },
                    },
                    kind_);
}

double PotentialSpec::derivative(double x) const {
  return std::visit(overloaded{
                        [x](const PowerLawPotential& p) {
                          return p.strength * p.exponent * std::pow(x, p.exponent - 1.0);
                        },
                        [x](const ShiftedOscillator&) { return 2.0 * x; },
                        [](const BoxPotential&) { return 0.0; },
                        [this, x](const TabulatedPotential&) {
                          if (x <= spline_->x_end) return spline_->interp.prime(x);
                          return tail_coefficient_ * tail_exponent_ * std::pow(x, tail_exponent_ - 1.0);
                        },
                    },
                    kind_);
}

double PotentialSpec::second_derivative(double x) const {
  return std::visit(overloaded{
                        [x](const PowerLawPotential& p) {
                          return p.strength * p.exponent * (p.exponent - 1.0) * std::pow(x, p.exponent - 2.0);
                        },
                        [](const ShiftedOscillator&) { return 2.0; },
                        [](const BoxPotential&) { return 0.0; },
                        [this, x](const TabulatedPotential&) {
                          if (x <= spline_->x_end) {
                            const double h = 1e-4 * std::max(1.0, x);
                            return (spline_->interp.prime(std::min(x + h, spline_->x_end)) -
                                    spline_->interp.prime(std::max(x - h, 0.0))) /
                                   (std::min(x + h, spline_->x_end) - std::max(x - h, 0.0));
                          }
                          return tail_coefficient_ * tail_exponent_ * (tail_exponent_ - 1.0) *
                                 std::pow(x, tail_exponent_ - 2.0);
                        },
                    },
                    kind_);
}

double PotentialSpec::minimum() const {
  return std::visit(overloaded{
                        [](const PowerLawPotential&) { return 0.0; },
                        [](const ShiftedOscillator&) { return 1.0; },
                        [](const BoxPotential&) { return 0.0; },
                        [](const TabulatedPotential& t) { return *std::min_element(t.v.begin(), t.v.end()); },
                    },
                    kind_);
}

double PotentialSpec::data_end() const {
  if (const auto* t = std::get_if<TabulatedPotential>(&kind_)) return t->x.back();
  if (const auto* b = std::get_if<BoxPotential>(&kind_)) return b->half_width;
  return std::numeric_limits<double>::infinity();
}

std::string PotentialSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&out](const PowerLawPotential& p) {
                   out << "powerlaw:N=" << p.exponent;
                   if (p.strength != 1.0) out << ",gamma=" << p.strength;
                 },
                 [&out](const ShiftedOscillator&) { out << "sho_shifted"; },
                 [&out](const BoxPotential& b) { out << "box:half_width=" << b.half_width; },
                 [&out](const TabulatedPotential& t) { out << "file:" << t.source; },
             },
             kind_);
  return out.str();
}

PotentialSpec load_tabulated(const std::filesystem::path& path, std::optional<double> domain_cutoff) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open potential file " + path.string());
  TabulatedPotential t;
  t.source = path.string();
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0, v = 0.0;
    if (!(fields >> x >> v)) throw UsageError("malformed line in " + path.string() + ": " + line);
    t.x.push_back(x);
    t.v.push_back(v);
  }
  return PotentialSpec(std::move(t), domain_cutoff);
}

PotentialSpec parse_potential(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (head == "sho_shifted") {
    if (!rest.empty()) throw UsageError("sho_shifted takes no parameters");
    return PotentialSpec(ShiftedOscillator{});
  }
  if (head == "file") {
    if (rest.empty()) throw UsageError("file: requires a path");
    return load_tabulated(std::filesystem::path(std::string(rest)));
  }
  if (head == "powerlaw" || head == "box") {
    std::optional<double> N, gamma, half_width;
    std::string_view params = rest;
    while (!params.empty()) {
      const auto comma = params.find(',');
      const std::string_view item = params.substr(0, comma);
      params = comma == std::string_view::npos ? std::string_view{} : params.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw UsageError("expected key=value in '" + std::string(item) + "'");
      const std::string_view key = item.substr(0, eq);
      const std::string_view val = item.substr(eq + 1);
      if (head == "powerlaw" && key == "N")
        N = parse_real(val, "N");
      else if (head == "powerlaw" && key == "gamma")
        gamma = parse_real(val, "gamma");
      else if (head == "box" && key == "half_width")
        half_width = parse_real(val, "half_width");
      else
        throw UsageError("unknown parameter '" + std::string(key) + "' for " + std::string(head));
    }
    if (head == "powerlaw") {
      if (!N) throw UsageError("powerlaw requires N=<real>");
      return PotentialSpec(PowerLawPotential{*N, gamma.value_or(1.0)});
    }
    if (!half_width) throw UsageError("box requires half_width=<real>");
    return PotentialSpec(BoxPotential{*half_width});
  }
  throw UsageError("unknown potential '" + std::string(text) + "'");
}

}  // namespace sumrules
