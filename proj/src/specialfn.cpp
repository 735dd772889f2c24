#include "sumrules/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sumrules/errors.hpp"

namespace sumrules::specialfn {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double xm1) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (xm1 + static_cast<double>(i));
  return a;
}

// Valid for x >= 1/2.
double ln_gamma_lanczos(double x) {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double gamma_lanczos(double x) {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

double bessel_i_series(double nu, double z) {
  const double half = 0.5 * z;
  const double q = half * half;
  double term = std::pow(half, nu) / gamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double bessel_i_asymptotic(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(next) >= std::abs(term)) break;  // past the smallest term
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(z) / std::sqrt(2.0 * kPi * z) * sum;
}

// Steed's method (Temme's CF2) for x >= 2 and |mu| <= 1/2. Returns K_mu and
// K_{mu+1}.
std::pair<double, double> bessel_k_cf2(double mu, double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  bool converged = false;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged) throw SolverError("bessel_k: continued fraction did not converge");
  h = a1 * h;
  const double k_mu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
  const double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
  return {k_mu, k_mu1};
}

// Airy: Ai(0) and -Ai'(0).
constexpr long double kAiry0 = 0.355028053887817239260063186004183176L;
constexpr long double kAiryPrime0 = 0.258819403792806798405183560189203963L;

struct AiryPair {
  double ai;
  double aip;
};

AiryPair airy_maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  // f, g and their derivatives, see the standard Maclaurin pair for Ai.
  long double ft = 1.0L, f = 1.0L;
  long double gt = x, g = x;
  long double fpt = x * x / 2.0L, fp = fpt;
  long double gpt = 1.0L, gp = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    ft *= x3 / ((k3 - 1.0L) * k3);
    gt *= x3 / (k3 * (k3 + 1.0L));
    gpt *= x3 / (k3 * (k3 - 2.0L));
    f += ft;
    g += gt;
    gp += gpt;
    if (k >= 2) {
      fpt *= x3 / ((k3 - 1.0L) * (k3 - 3.0L));
      fp += fpt;
    }
    const long double mag = std::abs(ft) + std::abs(gt) + std::abs(fpt) + std::abs(gpt);
    if (mag < 1e-24L && k > 3) break;
  }
  return {static_cast<double>(kAiry0 * f - kAiryPrime0 * g),
          static_cast<double>(kAiry0 * fp - kAiryPrime0 * gp)};
}

// u_k and v_k of the Airy asymptotic expansions.
struct AiryAsymptoticCoefficients {
  std::array<double, 40> u{};
  std::array<double, 40> v{};
  AiryAsymptoticCoefficients() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < 40; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};

const AiryAsymptoticCoefficients& airy_coeffs() {
  static const AiryAsymptoticCoefficients c;
  return c;
}

// sum_{k} (-1)^k c[k] zeta^{-k}, truncated at the smallest term.
double alternating_series(const std::array<double, 40>& c, double zeta) {
  double sum = c[0];
  double prev = std::abs(c[0]);
  double power = 1.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    power /= -zeta;
    const double term = c[k] * power;
    if (std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// The oscillatory expansions use even and odd subsequences separately.
std::pair<double, double> split_series(const std::array<double, 40>& c, double zeta) {
  double even = 0.0, odd = 0.0;
  double prev = INFINITY;
  double power = 1.0;  // zeta^{-k}
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double term = c[k] * power;
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      even += sign * term;
    else
      odd += sign * term;
    if (prev < 1e-18) break;
    power /= zeta;
  }
  return {even, odd};
}

AiryPair airy_eval(double x) {
  if (std::abs(x) > 100.0) throw DomainError("airy: |x| must not exceed 100");
  if (std::abs(x) <= 8.0) return airy_maclaurin(x);
  const auto& c = airy_coeffs();
  const double sqrt_pi = std::sqrt(kPi);
  if (x > 0.0) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double x14 = std::pow(x, 0.25);
    const double e = std::exp(-zeta);
    return {e / (2.0 * sqrt_pi * x14) * alternating_series(c.u, zeta),
            -x14 * e / (2.0 * sqrt_pi) * alternating_series(c.v, zeta)};
  }
  const double t = -x;
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  const double t14 = std::pow(t, 0.25);
  const double phase = zeta - 0.25 * kPi;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  const auto [up, uq] = split_series(c.u, zeta);
  const auto [vp, vq] = split_series(c.v, zeta);
  return {(cs * up + sn * uq) / (sqrt_pi * t14), t14 / sqrt_pi * (sn * vp - cs * vq)};
}

double erfcx_continued_fraction(double x) {
  // erfc(x) e^{x^2} sqrt(pi) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // evaluated with the modified Lentz algorithm.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 20000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / (std::sqrt(kPi) * f);
}

double erf_series(double ax) {
  // erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (1.3.5...(2k+1)); all
  // terms positive.
  const double x2 = ax * ax;
  double term = ax;
  double sum = ax;
  for (int k = 0; k < 500; ++k) {
    term *= 2.0 * x2 / (2.0 * k + 3.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 / std::sqrt(kPi) * std::exp(-x2) * sum;
}

constexpr double kErfCrossover = 2.5;

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
  if (x >= 0.5) return ln_gamma_lanczos(x);
  return std::log(kPi / std::sin(kPi * x)) - ln_gamma_lanczos(1.0 - x);
}

double gamma(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
  if (x >= 0.5) {
    if (x > 171.0) return INFINITY;
    return gamma_lanczos(x);
  }
  return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
}

double bessel_i(double order, double z) {
  if (!(order > -1.0 && order < 1.0)) throw DomainError("bessel_i: order must lie in (-1, 1)");
  if (!(z > 0.0)) throw DomainError("bessel_i: z must be positive");
  const double crossover = std::max(12.0, 2.0 * order * order);
  return z <= crossover ? bessel_i_series(order, z) : bessel_i_asymptotic(order, z);
}

double bessel_k(double order, double z) {
  if (!(order > 0.0 && order < 1.0)) throw DomainError("bessel_k: order must lie in (0, 1)");
  if (!(z > 0.0)) throw DomainError("bessel_k: z must be positive");
  if (z <= 2.0) {
    return 0.5 * kPi * (bessel_i_series(-order, z) - bessel_i_series(order, z)) /
           std::sin(kPi * order);
  }
  if (order <= 0.5) return bessel_k_cf2(order, z).first;
  return bessel_k_cf2(order - 1.0, z).second;
}

double airy_ai(double x) { return airy_eval(x).ai; }

double airy_ai_prime(double x) { return airy_eval(x).aip; }

double airy_zero(int n, AiryKind kind) {
  if (n < 0) throw DomainError("airy_zero: index must be non-negative");
  const double s = n + 1.0;
  double x;
  if (kind == AiryKind::function) {
    const double t = 3.0 * kPi * (4.0 * s - 1.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    double series = 1.0 + 5.0 / 48.0 * t2;
    if (t > 3.0)
      series += t2 * t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0 - t2 * 108056875.0 / 6967296.0));
    x = -std::pow(t, 2.0 / 3.0) * series;
  } else {
    const double t = 3.0 * kPi * (4.0 * s - 3.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    double series = 1.0 - 7.0 / 48.0 * t2;
    if (t > 3.0)
      series += t2 * t2 * (35.0 / 288.0 + t2 * (-181223.0 / 207360.0 + t2 * 18683371.0 / 1244160.0));
    x = -std::pow(t, 2.0 / 3.0) * series;
  }

  double residual = INFINITY;
  for (int iter = 0; iter < 60; ++iter) {
    const AiryPair p = airy_eval(x);
    double step;
    if (kind == AiryKind::function) {
      residual = std::abs(p.ai);
      step = p.ai / p.aip;
    } else {
      residual = std::abs(p.aip);
      step = p.aip / (x * p.ai);  // Ai'' = x Ai
    }
    x -= step;
    if (std::abs(step) <= 1e-15 * std::abs(x)) break;
  }
  const AiryPair p = airy_eval(x);
  residual = std::abs(kind == AiryKind::function ? p.ai : p.aip);
  if (residual >= 1e-12)
    throw SolverError("airy_zero: Newton iteration did not converge for n = " + std::to_string(n));
  return -x;
}

AiryZeroTable airy_zero_table(int count) {
  AiryZeroTable table;
  table.ai_zeros.reserve(count);
  table.ai_prime_zeros.reserve(count);
  for (int n = 0; n < count; ++n) {
    table.ai_zeros.push_back(airy_zero(n, AiryKind::function));
    table.ai_prime_zeros.push_back(airy_zero(n, AiryKind::derivative));
  }
  return table;
}

double erf(double x) {
  const double ax = std::abs(x);
  const double r = ax < kErfCrossover ? erf_series(ax) : 1.0 - erfcx_continued_fraction(ax) * std::exp(-ax * ax);
  return std::copysign(r, x);
}

double erfcx(double x) {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < kErfCrossover) return std::exp(x * x) * (1.0 - erf_series(x));
  return erfcx_continued_fraction(x);
}

}  // namespace sumrules::specialfn
