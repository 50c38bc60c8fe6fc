#pragma once

// Special functions needed by the cylindrical distribution family: log-gamma,
// modified Bessel functions of the first kind, the chi-square survival
// function, and two associated Legendre function products that appear in
// normalizing constants and moment formulas.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cylstats/quadrature.hpp"

namespace cylstats {

// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::invalid_argument("log_gamma: argument must be positive and finite");
  return std::lgamma(x);
}

namespace specfun_detail {

// Power series for log I_nu(z), accurate for moderate z.  The bracket sum
// 1 + sum_k (z^2/4)^k / (k! (nu+1)...(nu+k)) stays within a factor e^z of 1,
// so it never overflows for z <= series_cutoff.
inline double log_bessel_i_series(int order, double z) {
  const double quarter_z2 = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= quarter_z2 / (static_cast<double>(k) * (order + k));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return order * std::log(0.5 * z) - std::lgamma(order + 1.0) + std::log(sum);
}

// Asymptotic expansion for log I_0(z), z large: I_0(z) ~ e^z / sqrt(2 pi z)
// * sum_k prod_j (2j-1)^2 / (k! (8z)^k).  Truncated at the smallest term.
inline double log_bessel_i0_asymptotic(double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * k * z);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(sum);
}

// Large-argument expansion of I_nu(z) / I_{nu-1}(z), obtained by dividing
// the asymptotic series of numerator and denominator.  Coefficients use
// mu = 4 nu^2; accurate to O(z^-4), which is below double rounding for the
// small orders this library needs once z > 4096.
inline double bessel_i_ratio_asymptotic(double nu, double z) {
  const double mn = 4.0 * nu * nu;
  const double md = 4.0 * (nu - 1.0) * (nu - 1.0);
  const double a = (mn - 1.0) / 8.0;
  const double b = (mn - 1.0) * (mn - 9.0) / 128.0;
  const double c = (mn - 1.0) * (mn - 9.0) * (mn - 25.0) / 3072.0;
  const double ap = (md - 1.0) / 8.0;
  const double bp = (md - 1.0) * (md - 9.0) / 128.0;
  const double cp = (md - 1.0) * (md - 9.0) * (md - 25.0) / 3072.0;
  const double c1 = ap - a;
  const double c2 = ap * ap - bp - a * ap + b;
  const double c3 =
      ap * ap * ap - 2.0 * ap * bp + cp - a * (ap * ap - bp) + b * ap - c;
  return 1.0 + (c1 + (c2 + c3 / z) / z) / z;
}

// Continued fraction for the ratio I_nu(z) / I_{nu-1}(z) (Gautschi form),
// evaluated with the modified Lentz algorithm.  The fraction needs on the
// order of z terms, so large arguments go through the expansion above.
inline double bessel_i_ratio(double nu, double z) {
  if (z > 4096.0) return bessel_i_ratio_asymptotic(nu, z);
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k <= 6000; ++k) {
    const double b = 2.0 * (nu + k - 1.0) / z;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  throw ConvergenceError("bessel_i_ratio: continued fraction did not converge");
}

inline constexpr double bessel_series_cutoff = 15.0;

}  // namespace specfun_detail

// log I_order(z) for integer order >= 0 and z >= 0.  Uses the power series
// for z <= 15 and the asymptotic expansion plus ratio recursion above.
inline double log_bessel_i(int order, double z) {
  if (order < 0)
    throw std::invalid_argument("log_bessel_i: order must be >= 0");
  if (!(z >= 0.0) || !std::isfinite(z))
    throw std::invalid_argument("log_bessel_i: argument must be >= 0 and finite");
  if (z == 0.0)
    return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (z <= specfun_detail::bessel_series_cutoff)
    return specfun_detail::log_bessel_i_series(order, z);
  double value = specfun_detail::log_bessel_i0_asymptotic(z);
  for (int k = 1; k <= order; ++k)
    value += std::log(specfun_detail::bessel_i_ratio(k, z));
  return value;
}

// I_order(z); overflows to +infinity only when e^z itself overflows.
inline double bessel_i(int order, double z) {
  if (order < 0)
    throw std::invalid_argument("bessel_i: order must be >= 0");
  if (!(z >= 0.0) || !std::isfinite(z))
    throw std::invalid_argument("bessel_i: argument must be >= 0 and finite");
  if (z == 0.0) return order == 0 ? 1.0 : 0.0;
  return std::exp(log_bessel_i(order, z));
}

// e^{-z} I_order(z); bounded by 1 for all z >= 0, safe for large arguments.
inline double bessel_i_scaled(int order, double z) {
  if (order < 0)
    throw std::invalid_argument("bessel_i_scaled: order must be >= 0");
  if (!(z >= 0.0) || !std::isfinite(z))
    throw std::invalid_argument("bessel_i_scaled: argument must be >= 0 and finite");
  if (z == 0.0) return order == 0 ? 1.0 : 0.0;
  return std::exp(log_bessel_i(order, z) - z);
}

namespace specfun_detail {

// Regularized lower incomplete gamma P(a, x) by its power series.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw ConvergenceError("gamma_p_series: series did not converge");
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction
// (modified Lentz), valid for x >= a + 1.
inline double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double f = d;
  for (int k = 1; k < 1000; ++k) {
    const double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16)
      return f * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw ConvergenceError("gamma_q_continued_fraction: did not converge");
}

}  // namespace specfun_detail

// Survival function of the chi-square distribution with dof degrees of
// freedom: P(X > x).  For dof = 2 this reduces to exp(-x/2).
inline double chi_square_sf(double x, int dof) {
  if (dof < 1)
    throw std::invalid_argument("chi_square_sf: dof must be >= 1");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("chi_square_sf: x must be >= 0 and finite");
  if (x == 0.0) return 1.0;
  const double a = 0.5 * dof;
  const double half_x = 0.5 * x;
  if (half_x < a + 1.0)
    return 1.0 - specfun_detail::gamma_p_series(a, half_x);
  return specfun_detail::gamma_q_continued_fraction(a, half_x);
}

// Gamma(nu - m + 1) * P_nu^m(z) for z >= 1, integer m >= 0, and nu > -1.
// Evaluated through the integral representation
//   (Gamma(nu+1) / pi) * int_0^pi cos(m t) (z - sqrt(z^2-1) cos t)^{-(nu+1)} dt,
// which stays finite where the gamma prefactor of P_nu^m alone has poles.
inline double legendre_q(double nu, int m, double z,
                               const QuadratureConfig& config = {}) {
  if (!(nu > -1.0) || !std::isfinite(nu))
    throw std::invalid_argument("legendre_q: nu must be > -1 and finite");
  if (m < 0)
    throw std::invalid_argument("legendre_q: m must be >= 0");
  if (!(z >= 1.0) || !std::isfinite(z))
    throw std::invalid_argument("legendre_q: z must be >= 1 and finite");
  const double s = std::sqrt((z - 1.0) * (z + 1.0));
  const double exponent = -(nu + 1.0);
  // z - s cos t rewritten as 1/(z+s) + 2 s sin^2(t/2): the direct form
  // cancels near t = 0 once z is large and the lost digits stall the
  // adaptive rule on the spike the integrand develops there
  const double base = 1.0 / (z + s);
  auto integrand = [=](double t) {
    const double half_sin = std::sin(0.5 * t);
    return std::cos(m * t) *
           std::pow(base + 2.0 * s * half_sin * half_sin, exponent);
  };
  const double integral = integrate(integrand, 0.0, std::numbers::pi, config);
  return std::exp(log_gamma(nu + 1.0)) * integral / std::numbers::pi;
}

// Associated Legendre function of negative order, P_nu^{-mu}(z), for z >= 1
// and mu > -1/2, through the integral representation
//   (z^2-1)^{mu/2} / (2^mu sqrt(pi) Gamma(mu + 1/2))
//     * int_0^pi (sin u)^{2 mu} (z + sqrt(z^2-1) cos u)^{nu - mu} du,
// where the substitution t = cos u removes the endpoint singularity.
inline double legendre_neg_order(double mu, double nu, double z,
                                 const QuadratureConfig& config = {}) {
  if (!(mu > -0.5) || !std::isfinite(mu))
    throw std::invalid_argument("legendre_neg_order: mu must be > -1/2");
  if (!std::isfinite(nu))
    throw std::invalid_argument("legendre_neg_order: nu must be finite");
  if (!(z >= 1.0) || !std::isfinite(z))
    throw std::invalid_argument("legendre_neg_order: z must be >= 1 and finite");
  const double z2m1 = (z - 1.0) * (z + 1.0);
  const double s = std::sqrt(z2m1);
  const double exponent = nu - mu;
  // z + s cos u = 1/(z+s) + 2 s cos^2(u/2), stable near u = pi (see
  // legendre_q for the matching rewrite at its t = 0 endpoint)
  const double base = 1.0 / (z + s);
  auto integrand = [=](double u) {
    const double sin_u = std::sin(u);
    const double half_cos = std::cos(0.5 * u);
    return std::pow(sin_u * sin_u, mu) *
           std::pow(base + 2.0 * s * half_cos * half_cos, exponent);
  };
  const double integral = integrate(integrand, 0.0, std::numbers::pi, config);
  const double prefactor =
      std::pow(z2m1, 0.5 * mu) /
      (std::pow(2.0, mu) * std::sqrt(std::numbers::pi) *
       std::exp(log_gamma(mu + 0.5)));
  return prefactor * integral;
}

}  // namespace cylstats
