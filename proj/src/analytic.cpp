#include "trsec/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace trsec {

namespace {

struct SignedLog {
  double log_abs;
  int sign;  // -1, 0, +1
};

// log|Gamma(x)| with sign, valid for positive x and negative non-integers.
// For the negative half-integers used here the reflection formula's
// sin(pi x) is +-1 up to rounding, so no precision is lost.
SignedLog signed_log_gamma(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  const double s = std::sin(std::numbers::pi * x);
  const double la = std::log(std::numbers::pi) - std::log(std::abs(s)) -
                    std::lgamma(1.0 - x);
  return {la, s > 0.0 ? 1 : -1};
}

uint128 binomial_u128(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  uint128 r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= static_cast<uint128>(n - k + j);
    r /= static_cast<uint128>(j);
  }
  return r;
}

}  // namespace

uint128 lah(int l, int q) {
  if (l < 0 || q < 0) throw std::domain_error("lah: negative index");
  if (l == 0 && q == 0) return 1;
  if (q == 0 || q > l) return 0;
  if (l > 20)
    throw std::domain_error("lah: exact range is l <= 20, use log_lah");
  // L(l,q) = binom(l-1, q-1) * l!/q!; the falling product q+1..l stays well
  // inside 128 bits for l <= 20.
  uint128 falling = 1;
  for (int m = q + 1; m <= l; ++m) falling *= static_cast<uint128>(m);
  return binomial_u128(l - 1, q - 1) * falling;
}

double log_lah(int l, int q) {
  if (l < 0 || q < 0) throw std::domain_error("log_lah: negative index");
  if (l == 0 && q == 0) return 0.0;
  if (q == 0 || q > l) return -std::numeric_limits<double>::infinity();
  const double log_binom = std::lgamma(static_cast<double>(l)) -
                           std::lgamma(static_cast<double>(q)) -
                           std::lgamma(static_cast<double>(l - q + 1));
  return log_binom + std::lgamma(static_cast<double>(l + 1)) -
         std::lgamma(static_cast<double>(q + 1));
}

double psi_coeff(int order, int l, int q) {
  if (order < 1) throw std::domain_error("psi_coeff: order must be >= 1");
  if (l < 0 || q < 0) throw std::domain_error("psi_coeff: negative index");
  if (q > l || (q == 0 && l > 0)) return 0.0;  // Lah factor vanishes

  const double u = static_cast<double>(order);
  const SignedLog g_num = signed_log_gamma(0.5 + l - u);
  const SignedLog g_den = signed_log_gamma(0.5 - u);

  double log_abs = 0.5 * std::log(std::numbers::pi) +
                   std::lgamma(2.0 * u) + g_num.log_abs + log_lah(l, q) -
                   (u - q) * std::numbers::ln2 - g_den.log_abs -
                   std::lgamma(0.5 + l + u) -
                   std::lgamma(static_cast<double>(l + 1));
  int sign = g_num.sign * g_den.sign;
  if (q % 2 != 0) sign = -sign;
  return sign * std::exp(log_abs);
}

double bessel_k_approx(int order, double x, int terms) {
  if (order < 1)
    throw std::domain_error("bessel_k_approx: order must be >= 1");
  if (!(x > 0.0)) throw std::domain_error("bessel_k_approx: x must be > 0");
  if (terms < 1) throw std::domain_error("bessel_k_approx: terms must be >= 1");
  const double lx = std::log(x);
  long double sum = 0.0L;
  for (int l = 0; l <= terms; ++l)
    for (int q = (l == 0 ? 0 : 1); q <= l; ++q) {
      const double c = psi_coeff(order, l, q);
      if (c == 0.0) continue;
      sum += static_cast<long double>(c) *
             std::exp(static_cast<long double>((q - order) * lx - x));
    }
  return static_cast<double>(sum);
}

double const_a(int bor, int terms) {
  if (bor < 2) throw std::domain_error("const_a: bor must be >= 2");
  if (terms < 1) throw std::domain_error("const_a: terms must be >= 1");
  const int order = bor - 1;
  const double u = static_cast<double>(bor);
  // 1 / (U^2 (U-1)! 2^(U+3)) in log space to keep large U usable.
  const double log_norm = -2.0 * std::log(u) - std::lgamma(u) -
                          (u + 3.0) * std::numbers::ln2;
  long double sum = 0.0L;
  for (int l = 0; l <= terms; ++l)
    for (int q = (l == 0 ? 0 : 1); q <= l; ++q) {
      const double c = psi_coeff(order, l, q);
      if (c == 0.0) continue;
      sum += static_cast<long double>(c) *
             std::exp(static_cast<long double>(
                 std::lgamma(static_cast<double>(q) + 4.0)));
    }
  return static_cast<double>(sum * std::exp(static_cast<long double>(log_norm)));
}

namespace {

void require_bound_inputs(const SystemParams& p) {
  p.validate();
  if (!(p.sigma2_vb > 0.0))
    throw std::invalid_argument("bounds: sigma2_vb must be positive");
  if (!(p.sigma2_ve > 0.0))
    throw std::invalid_argument("bounds: sigma2_ve must be positive");
  if (p.bor < 2) throw std::invalid_argument("bounds: bor must be >= 2");
}

}  // namespace

double sinr_bob_bound(const SystemParams& p) {
  require_bound_inputs(p);
  const double u = static_cast<double>(p.bor);
  return p.alpha * (u + 1.0) / (u * p.sigma2_vb);
}

double sinr_eve_bound(const SystemParams& p) {
  require_bound_inputs(p);
  const double a = const_a(p.bor, p.bessel_terms);
  return 4.0 * p.alpha * a / (p.sigma2_ve + (1.0 - p.alpha) * p.sigma2_an);
}

SrCoefficients sr_coefficients(const SystemParams& p) {
  const double u = static_cast<double>(p.bor);
  const double a = const_a(p.bor, p.bessel_terms);
  SrCoefficients t;
  t.t1 = p.sigma2_an * (u + 1.0);
  t.t2 = p.sigma2_ve * (u + 1.0) - u * p.sigma2_vb * p.sigma2_an +
         p.sigma2_an * (u + 1.0);
  t.t3 = u * p.sigma2_vb * (p.sigma2_ve + p.sigma2_an);
  t.t4 = u * p.sigma2_vb * (4.0 * a - p.sigma2_an);
  return t;
}

double secrecy_rate_bound(const SystemParams& p) {
  require_bound_inputs(p);
  const SrCoefficients t = sr_coefficients(p);
  const double num = (-p.alpha * t.t1 + t.t2) * p.alpha + t.t3;
  const double den = p.alpha * t.t4 + t.t3;
  const double arg = num / den;
  if (!(arg > 0.0))
    throw NonPositiveArgument(
        "secrecy_rate_bound: log argument " + std::to_string(arg) +
        " is not positive (bor=" + std::to_string(p.bor) + ")");
  return std::log2(arg);
}

std::vector<SrCurvePoint> sr_curve(const SystemParams& p,
                                   const std::vector<double>& alphas) {
  std::vector<SrCurvePoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    SystemParams q = p;
    q.alpha = alpha;
    SrCurvePoint pt;
    pt.alpha = alpha;
    pt.sinr_bob_bound = sinr_bob_bound(q);
    pt.sinr_eve_bound = sinr_eve_bound(q);
    try {
      pt.sr_bound = secrecy_rate_bound(q);
    } catch (const NonPositiveArgument&) {
      pt.sr_bound = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(pt);
  }
  return out;
}

namespace {

double sr_at(const SystemParams& p, double alpha) {
  SystemParams q = p;
  q.alpha = alpha;
  try {
    return secrecy_rate_bound(q);
  } catch (const NonPositiveArgument&) {
    return -std::numeric_limits<double>::infinity();
  }
}

double golden_section_max(const SystemParams& p, double lo, double hi) {
  constexpr double inv_phi = 0.61803398874989484820;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = sr_at(p, c), fd = sr_at(p, d);
  while (b - a > 1e-12) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = sr_at(p, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = sr_at(p, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double alpha_opt(const SystemParams& p) {
  require_bound_inputs(p);
  const SrCoefficients t = sr_coefficients(p);
  std::vector<double> candidates{0.0, 1.0};

  const double a = -t.t1 * t.t4;
  const double b = -2.0 * t.t1 * t.t3;
  const double c = t.t2 * t.t3 - t.t3 * t.t4;
  if (a != 0.0) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      // Cancellation-safe quadratic roots; T4 ~ 0 makes |a| tiny and the
      // naive (-b +- sqrt) form loses the interior root entirely.
      const double qq = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      candidates.push_back(qq / a);
      if (qq != 0.0) candidates.push_back(c / qq);
    } else {
      candidates.push_back(golden_section_max(p, 0.0, 1.0));
    }
  } else if (b != 0.0) {
    candidates.push_back(-c / b);
  }

  double best_alpha = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (double cand : candidates) {
    if (!(cand >= 0.0 && cand <= 1.0)) continue;
    const double v = sr_at(p, cand);
    if (v > best) {
      best = v;
      best_alpha = cand;
    }
  }
  return best_alpha;
}

}  // namespace trsec
