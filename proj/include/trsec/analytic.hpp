#pragma once

#include <stdexcept>

#include "trsec/model.hpp"

namespace trsec {

/// Secrecy-rate log argument came out non-positive for these inputs
/// (happens when the series constant A turns negative, e.g. bor == 2).
struct NonPositiveArgument : std::domain_error {
  using std::domain_error::domain_error;
};

using uint128 = unsigned __int128;

/// Lah number L(l, q), exact. L(0,0) = 1, L(l,0) = 0 for l > 0,
/// L(l,q) = binom(l-1, q-1) * l!/q!. Exact only up to l = 20 in 128 bits
/// here; larger l throws std::domain_error (use log_lah instead).
uint128 lah(int l, int q);

/// log L(l, q) via lgamma; -inf where L == 0. Valid for any l, q >= 0.
double log_lah(int l, int q);

/// Series coefficient psi(U, l, q) for the order-U modified Bessel expansion:
///
///   psi = (-1)^q sqrt(pi) G(2U) G(1/2+l-U) L(l,q)
///         / (2^(U-q) G(1/2-U) G(1/2+l+U) l!)
///
/// evaluated in log space with explicit sign tracking (the two gamma factors
/// at negative half-integers are handled by the reflection formula, where
/// sin(pi x) is exactly +-1). Requires order >= 1.
double psi_coeff(int order, int l, int q);

/// Truncated expansion of the modified Bessel function K_order(x):
///   K_order(x) ~= sum_{l=0..terms} sum_{q=0..l} psi(order,l,q) e^-x x^(q-order)
///
/// The series is asymptotic in character: it is accurate for small-to-
/// moderate x (roughly x <= order) and degrades, eventually diverging, as x
/// grows past the order. Downstream use only integrates it against
/// x^3 e^-2x-type weights, which is where it behaves.
double bessel_k_approx(int order, double x, int terms);

/// Interference-moment constant
///   A = (1 / (U^2 (U-1)! 2^(U+3))) sum_{l,q} psi(U-1, l, q) Gamma(q+4).
/// 4*A*U -> 1 as U grows; the truncated series makes A negative for U = 2
/// (only), in which case the closed-form Eve bound is unusable.
double const_a(int bor, int terms);

/// Bob's mean post-equalization SINR upper bound: alpha (U+1) / (U s2_vb).
double sinr_bob_bound(const SystemParams& p);

/// Eve's mean SINR approximation: 4 alpha A / (s2_ve + (1-alpha) s2_an).
double sinr_eve_bound(const SystemParams& p);

/// Coefficients of the rational secrecy-rate form
///   SR(alpha) = log2((-alpha^2 T1 + alpha T2 + T3) / (alpha T4 + T3)).
struct SrCoefficients {
  double t1, t2, t3, t4;
};
SrCoefficients sr_coefficients(const SystemParams& p);

/// log2((1+sinr_bob)/(1+sinr_eve)) in the rational form above. Throws
/// NonPositiveArgument when the argument is not positive (T4 regime).
double secrecy_rate_bound(const SystemParams& p);

/// One point of the closed-form secrecy-rate curve.
struct SrCurvePoint {
  double alpha = 0.0;
  double sr_bound = 0.0;  ///< NaN where the log argument is non-positive
  double sinr_bob_bound = 0.0;
  double sinr_eve_bound = 0.0;
};

/// Closed-form curve over an alpha grid (p.alpha ignored). Where defined,
/// sr_bound == log2(1+sinr_bob_bound) - log2(1+sinr_eve_bound).
std::vector<SrCurvePoint> sr_curve(const SystemParams& p,
                                   const std::vector<double>& alphas);

/// Maximizer of secrecy_rate_bound over alpha in [0,1] (p.alpha ignored).
///
/// Stationary points solve -T1 T4 a^2 - 2 T1 T3 a + (T2 T3 - T3 T4) = 0,
/// evaluated with the cancellation-safe quadratic (T4 is often ~0). A
/// negative discriminant falls back to golden-section search. Candidates
/// outside [0,1] are discarded; the boundaries are always candidates.
double alpha_opt(const SystemParams& p);

}  // namespace trsec
