#include "sumrules/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "sumrules/errors.hpp"

namespace sumrules::spectrum {

namespace {

constexpr double kPi = std::numbers::pi;

// Decay exponent required beyond the outermost turning point, and the
// minimum accepted when the domain is capped by a cutoff or by data.
constexpr double kDecayTarget = 22.0;
constexpr double kDecayMinimum = 10.0;
// Decay exponent beyond which nodes are not counted when certifying.
constexpr double kCertifyDecay = 10.0;
// k_max * h for the coarse grid.
constexpr double kPhaseStep = 0.02;

// Outermost point with V(x) <= E. Marches outward with a step tied to the
// local length scale.
double outer_turning_point(const PotentialSpec& spec, double energy) {
  if (const auto* t = std::get_if<TabulatedPotential>(&spec.kind())) {
    if (spec.value(t->x.back()) <= energy) return t->x.back();
    for (std::size_t i = t->x.size(); i-- > 0;) {
      if (t->v[i] <= energy) {
        // refine between samples i and i+1
        double lo = t->x[i], hi = t->x[i + 1];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (spec.value(mid) <= energy ? lo : hi) = mid;
        }
        return lo;
      }
    }
    return 0.0;
  }
  if (spec.value(0.0) > energy) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (spec.value(hi) <= energy) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) throw DomainError("potential does not exceed the trial energy: not confining");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spec.value(mid) <= energy ? lo : hi) = mid;
  }
  return hi;
}

// Smallest x >= x_turn with integral_{x_turn}^{x} sqrt(V - E) >= target,
// never beyond `limit`. Returns {x, accumulated exponent}.
std::pair<double, double> decay_point(const PotentialSpec& spec, double energy, double x_turn, double target,
                                      double limit) {
  double x = x_turn;
  double acc = 0.0;
  const double base = 1e-3 * std::max(1.0, x_turn);
  while (acc < target && x < limit) {
    const double k = std::sqrt(std::max(spec.value(x) - energy, 0.0));
    double dx = std::max(base, std::min(0.05 * std::max(1.0, x_turn), 0.2 / std::max(k, 1e-12)));
    dx = std::min(dx, limit - x);
    // Simpson on [x, x+dx]
    const double km = std::sqrt(std::max(spec.value(x + 0.5 * dx) - energy, 0.0));
    const double k1 = std::sqrt(std::max(spec.value(x + dx) - energy, 0.0));
    acc += dx / 6.0 * (k + 4.0 * km + k1);
    x += dx;
  }
  return {x, acc};
}

struct Grid {
  double h = 0.0;
  std::vector<double> v;  // V(i h), i = 0..n
  double x_max() const { return h * static_cast<double>(v.size() - 1); }
};

Grid make_grid(const PotentialSpec& spec, double x_max, double h_target) {
  const auto n = static_cast<std::size_t>(std::ceil(x_max / h_target));
  Grid g;
  g.h = x_max / static_cast<double>(n);
  g.v.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.v[i] = spec.value(g.h * static_cast<double>(i));
  return g;
}

Grid refine(const PotentialSpec& spec, const Grid& coarse) {
  Grid g;
  g.h = 0.5 * coarse.h;
  const std::size_t n = 2 * (coarse.v.size() - 1);
  g.v.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    g.v[i] = (i % 2 == 0) ? coarse.v[i / 2] : spec.value(g.h * static_cast<double>(i));
  return g;
}

// Values at x = 0 and x = h from RK4 sub-stepping of psi'' = (V - E) psi.
std::pair<double, double> start_values(const PotentialSpec& spec, Parity parity, double energy, double h) {
  double y = parity == Parity::even ? 1.0 : 0.0;
  double yp = parity == Parity::even ? 0.0 : 1.0;
  const double y0 = y;
  constexpr int kSub = 64;
  const double dt = h / kSub;
  for (int i = 0; i < kSub; ++i) {
    const double t = i * dt;
    const double f0 = spec.value(t) - energy;
    const double fm = spec.value(t + 0.5 * dt) - energy;
    const double f1 = spec.value(t + dt) - energy;
    const double k1y = yp, k1p = f0 * y;
    const double k2y = yp + 0.5 * dt * k1p, k2p = fm * (y + 0.5 * dt * k1y);
    const double k3y = yp + 0.5 * dt * k2p, k3p = fm * (y + 0.5 * dt * k2y);
    const double k4y = yp + dt * k3p, k4p = f1 * (y + dt * k3y);
    y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    yp += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  }
  return {y0, y};
}

// Numerov sweep. Counts sign changes on (0, x_limit]; optionally records psi.
int sweep(const PotentialSpec& spec, const Grid& g, Parity parity, double energy, double x_limit,
          std::vector<double>* psi = nullptr) {
  const std::size_t n = g.v.size() - 1;
  const double c = g.h * g.h / 12.0;
  auto [y_prev, y] = start_values(spec, parity, energy, g.h);
  if (psi) {
    psi->assign(n + 1, 0.0);
    (*psi)[0] = y_prev;
    (*psi)[1] = y;
  }
  const auto limit = static_cast<std::size_t>(std::min<double>(static_cast<double>(n), std::floor(x_limit / g.h)));
  int nodes = 0;
  double last_sign = y > 0.0 ? 1.0 : (y < 0.0 ? -1.0 : 0.0);
  if (parity == Parity::even && y_prev * y < 0.0) ++nodes;
  double w_prev = 1.0 - c * (g.v[0] - energy);
  double w = 1.0 - c * (g.v[1] - energy);
  for (std::size_t i = 1; i < n; ++i) {
    const double f = g.v[i] - energy;
    const double w_next = 1.0 - c * (g.v[i + 1] - energy);
    double y_next = (2.0 * y * (1.0 + 5.0 * c * f) - y_prev * w_prev) / w_next;
    y_prev = y;
    y = y_next;
    w_prev = w;
    w = w_next;
    if (std::abs(y) > 1e200) {
      y *= 1e-200;
      y_prev *= 1e-200;
      if (psi)
        for (std::size_t j = 0; j <= i; ++j) (*psi)[j] *= 1e-200;
    }
    if (psi) (*psi)[i + 1] = y;
    if (i + 1 <= limit && y != 0.0) {
      const double s = y > 0.0 ? 1.0 : -1.0;
      if (last_sign != 0.0 && s != last_sign) ++nodes;
      last_sign = s;
    }
  }
  return nodes;
}

// Largest energy strictly below which exactly `index` nodes are found.
double bisect_level(const PotentialSpec& spec, const Grid& g, Parity parity, int index, double lo, double hi,
                    double* width) {
  const double x_all = g.x_max() + g.h;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sweep(spec, g, parity, mid, x_all) > index)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  if (width) *width = (hi - lo) / std::max(1.0, std::abs(hi));
  return 0.5 * (lo + hi);
}

Spectrum box_spectrum(double half_width, Parity parity, int count) {
  Spectrum s;
  s.parity = parity;
  s.method = "analytic-box";
  s.x_max = half_width;
  const double k0 = kPi / (2.0 * half_width);
  for (int n = 0; n < count; ++n) {
    const double m = parity == Parity::even ? 2.0 * n + 1.0 : 2.0 * n + 2.0;
    s.eigenvalues.push_back(k0 * k0 * m * m);
    s.node_counts.push_back(n);
    s.residuals.push_back(0.0);
  }
  return s;
}

double power_sum(std::span<const double> values, int p) {
  double sum = 0.0;
  for (auto it = values.rbegin(); it != values.rend(); ++it) sum += std::pow(*it, -p);
  return sum;
}

}  // namespace

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(std::string_view text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  throw UsageError("parity must be 'even' or 'odd', got '" + std::string(text) + "'");
}

Spectrum solve_spectrum(const PotentialSpec& spec, Parity parity, int count) {
  if (count < 1) throw DomainError("solve_spectrum: count must be at least 1");
  if (spec.is_box()) return box_spectrum(spec.box_half_width(), parity, count);

  const double vmin = spec.minimum();
  const double data_end = spec.data_end();
  const double cap = std::min(spec.domain_cutoff().value_or(std::numeric_limits<double>::infinity()), data_end);

  auto domain_for = [&](double energy) {
    const double x_turn = outer_turning_point(spec, energy);
    if (x_turn >= cap)
      throw SolverError("domain cutoff too small: the classically allowed region reaches x = " +
                        std::to_string(x_turn) + "; increase the cutoff");
    const auto [x, decay] = decay_point(spec, energy, x_turn, kDecayTarget, cap);
    if (decay < kDecayMinimum)
      throw SolverError("domain cutoff too small: wavefunction decays only by exp(-" + std::to_string(decay) +
                        ") at x = " + std::to_string(x) + "; increase the cutoff");
    const double x_max = spec.domain_cutoff() ? cap : x;
    const double k_max = std::sqrt(std::max({energy - vmin, spec.value(x_max) - energy, 1.0}));
    return std::pair{x_max, kPhaseStep / k_max};
  };

  // Energy ceiling holding at least `count` levels of this parity.
  double e_hi = vmin + 4.0;
  Grid coarse;
  for (int it = 0;; ++it) {
    if (it > 60) throw SolverError("solve_spectrum: could not bracket the requested levels");
    const auto [x_max, h] = domain_for(e_hi);
    coarse = make_grid(spec, x_max, h);
    if (sweep(spec, coarse, parity, e_hi, x_max + h) >= count) break;
    e_hi = vmin + 2.0 * (e_hi - vmin);
  }
  const Grid fine = refine(spec, coarse);

  Spectrum s;
  s.parity = parity;
  s.method = "numerov-shooting";
  s.x_max = coarse.x_max();
  s.step = fine.h;
  double lo_coarse = vmin, lo_fine = vmin;
  for (int n = 0; n < count; ++n) {
    double w1 = 0.0, w2 = 0.0;
    const double l1 = bisect_level(spec, coarse, parity, n, lo_coarse, e_hi, &w1);
    const double l2 = bisect_level(spec, fine, parity, n, lo_fine, e_hi, &w2);
    lo_coarse = l1;
    lo_fine = l2;
    const double lambda = l2 + (l2 - l1) / 15.0;
    s.eigenvalues.push_back(lambda);
    s.residuals.push_back(std::abs(l2 - l1) / 15.0);
    s.bracket_tolerance = std::max({s.bracket_tolerance, w1, w2});

    const double x_turn = outer_turning_point(spec, lambda);
    const double x_cert = decay_point(spec, lambda, x_turn, kCertifyDecay, s.x_max).first;
    const int nodes = sweep(spec, fine, parity, lambda, x_cert);
    if (nodes != n)
      throw SolverError("solve_spectrum: node count " + std::to_string(nodes) + " does not certify level " +
                        std::to_string(n));
    s.node_counts.push_back(nodes);
  }
  return s;
}

double partial_inverse_sum(std::span<const double> eigenvalues, int p) {
  if (p < 1) throw DomainError("partial_inverse_sum: order must be at least 1");
  if (eigenvalues.empty()) throw DomainError("partial_inverse_sum: empty spectrum");
  return power_sum(eigenvalues, p);
}

double partial_inverse_sum(const Spectrum& s, int p) { return partial_inverse_sum(s.eigenvalues, p); }

LadderModel wkb_ladder(const powerlaw::PowerLawParams& params) {
  const double N = params.exponent;
  const double c = std::sqrt(kPi) * (N + 2.0) * specialfn::gamma((N + 2.0) / (2.0 * N)) /
                   (2.0 * specialfn::gamma(1.0 / N));
  LadderModel m;
  m.power = 2.0 * N / (N + 2.0);
  m.scale = c * std::pow(params.strength, 1.0 / N);
  m.even_offset = 0.5;
  m.odd_offset = 1.5;
  return m;
}

std::optional<LadderModel> ladder_model(const PotentialSpec& spec) {
  if (auto p = spec.power_law()) return wkb_ladder(*p);
  if (std::holds_alternative<ShiftedOscillator>(spec.kind())) return LadderModel{2.0, 1.0, 1.0, 2.0};
  if (spec.is_box()) return LadderModel{kPi / (2.0 * spec.box_half_width()), 2.0, 1.0, 2.0};
  return std::nullopt;
}

double ladder_tail(const LadderModel& model, int k, Parity parity, int p) {
  if (p < 1) throw DomainError("ladder_tail: order must be at least 1");
  const double r = p * model.power;
  if (r <= 1.0)
    throw DivergentSum("ladder tail diverges: summand decays like n^-" + std::to_string(r));
  const double s = parity == Parity::even ? model.even_offset : model.odd_offset;
  return std::pow(model.scale, -r) * std::pow(2.0 * k + 1.0 + s, 1.0 - r) / (2.0 * (r - 1.0));
}

double wkb_tail(const powerlaw::PowerLawParams& params, int k, Parity parity, int p) {
  return ladder_tail(wkb_ladder(params), k, parity, p);
}

double ladder_difference_tail(const LadderModel& model, double n, int p) {
  if (!(n > 0.0)) throw DomainError("ladder_difference_tail: lower limit must be positive");
  const double r = p * model.power;
  return 0.5 * (model.odd_offset - model.even_offset) * std::pow(2.0 * model.scale * n, -r);
}

double wkb_difference_tail(const powerlaw::PowerLawParams& params, double n, int p) {
  return ladder_difference_tail(wkb_ladder(params), n, p);
}

double accelerated_alternating_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  // Averaging the last `depth` partial sums `depth - 1` times.
  const std::size_t depth = std::min<std::size_t>(terms.size(), 24);
  std::vector<double> partial;
  partial.reserve(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += (i % 2 == 0 ? 1.0 : -1.0) * terms[i];
    partial.push_back(acc);
  }
  std::vector<double> row(partial.end() - static_cast<std::ptrdiff_t>(depth), partial.end());
  while (row.size() > 1) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
  }
  return row.front();
}

std::vector<double> merge_ladders(const Spectrum& even, const Spectrum& odd) {
  std::vector<double> merged;
  const std::size_t n = std::min(even.eigenvalues.size(), odd.eigenvalues.size());
  for (std::size_t i = 0; i < n; ++i) {
    merged.push_back(even.eigenvalues[i]);
    merged.push_back(odd.eigenvalues[i]);
  }
  return merged;
}

bool parity_interlaced(const Spectrum& even, const Spectrum& odd) {
  const auto merged = merge_ladders(even, odd);
  for (std::size_t i = 1; i < merged.size(); ++i)
    if (!(merged[i] > merged[i - 1])) return false;
  return true;
}

bool nodes_certified(const Spectrum& s) {
  for (std::size_t i = 0; i < s.node_counts.size(); ++i)
    if (s.node_counts[i] != static_cast<int>(i)) return false;
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
    if (!(s.eigenvalues[i] > s.eigenvalues[i - 1])) return false;
  return true;
}

SumRuleReport assemble_report(const PotentialSpec& spec, int k, int p) {
  if (k < 1) throw DomainError("assemble_report: k must be at least 1");
  if (p < 1) throw DomainError("assemble_report: order must be at least 1");
  const Spectrum even = solve_spectrum(spec, Parity::even, k + 1);
  const Spectrum odd = solve_spectrum(spec, Parity::odd, k + 1);

  SumRuleReport r;
  r.order = p;
  r.terms = k;
  r.partial_S2 = partial_inverse_sum(even, p);
  r.partial_S1 = partial_inverse_sum(odd, p);

  if (const auto model = ladder_model(spec)) {
    if (p * model->power > 1.0) {
      r.tail_S2 = ladder_tail(*model, k, Parity::even, p);
      r.tail_S1 = ladder_tail(*model, k, Parity::odd, p);
      r.S_estimate = (r.partial_S2 + *r.tail_S2) - (r.partial_S1 + *r.tail_S1);
    } else {
      r.tail_S = ladder_difference_tail(*model, k + 0.5, p);
      r.S_estimate = r.partial_S2 - r.partial_S1 + *r.tail_S;
    }
  } else {
    std::vector<double> terms;
    for (double lambda : merge_ladders(even, odd)) terms.push_back(std::pow(lambda, -p));
    r.S_estimate = accelerated_alternating_sum(terms);
  }

  if (p == 1) {
    if (auto params = spec.power_law()) {
      r.closed_form_ref = powerlaw::closed_form_S(*params);
    } else if (spec.is_box()) {
      const double scale = 2.0 * spec.box_half_width() / kPi;
      r.closed_form_ref = powerlaw::box_limit_sums().S * scale * scale;
    } else if (std::holds_alternative<ShiftedOscillator>(spec.kind())) {
      r.closed_form_ref = std::log(2.0) / 2.0;
    }
  }
  if (r.closed_form_ref) r.abs_error = std::abs(r.S_estimate - *r.closed_form_ref);
  return r;
}

nlohmann::json to_json(const SumRuleReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(); };
  nlohmann::json j;
  j["order"] = r.order;
  j["terms"] = r.terms;
  j["partial_S1"] = r.partial_S1;
  j["partial_S2"] = r.partial_S2;
  j["tail_S1"] = opt(r.tail_S1);
  j["tail_S2"] = opt(r.tail_S2);
  j["tail_S"] = opt(r.tail_S);
  j["S_estimate"] = r.S_estimate;
  j["closed_form_ref"] = opt(r.closed_form_ref);
  j["abs_error"] = opt(r.abs_error);
  return j;
}

std::string to_csv(std::span<const Spectrum> spectra) {
  std::ostringstream out;
  out << "parity,n,lambda,nodes,residual\n";
  out << std::setprecision(15);
  for (const auto& s : spectra)
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      out << to_string(s.parity) << ',' << i << ',' << s.eigenvalues[i] << ',' << s.node_counts[i] << ','
          << std::setprecision(3) << s.residuals[i] << std::setprecision(15) << '\n';
  return out.str();
}

}  // namespace sumrules::spectrum
