#pragma once

// Density evaluation for the cylindrical family: the five-parameter model,
// its generalized-gamma extension, the Johnson-Wehrly and independence
// submodels, the Gaussian-linear competitors, and the marginal and
// conditional densities of the main model.  Everything is evaluated in log
// space so large exponential arguments cannot overflow.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cylstats/quadrature.hpp"
#include "cylstats/specfun.hpp"
#include "cylstats/types.hpp"

namespace cylstats {

namespace density_detail {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// (alpha - 1) log x with the x = 0, alpha = 1 corner evaluated as 0.
inline double power_log_term(double alpha, double x) {
  if (alpha == 1.0) return 0.0;
  return (alpha - 1.0) * std::log(x);
}

// e * w for e = (beta x)^a >= 0 (possibly overflowed to +inf) and weight
// w >= 0; resolves the inf * 0 corner in favor of the weight.
inline double scaled_exponent(double e, double w) {
  if (w == 0.0) return 0.0;
  return e * w;
}

}  // namespace density_detail

// Log density of the five-parameter model at one observation.  Returns -inf
// where the density is exactly zero: on the skew-factor zero set (|lambda|=1)
// and at x = 0 for alpha > 1.
inline double weissvm_logpdf(const WeiSSVMParams& p, const CylObservation& obs) {
  if (obs.x < 0.0)
    throw std::invalid_argument("weissvm_logpdf: x must be >= 0");
  const double d = obs.theta - p.mu;
  const double skew = 1.0 + p.lambda * std::sin(d);
  if (skew <= 0.0) return density_detail::neg_inf;
  const double e = std::pow(p.beta * obs.x, p.alpha);
  const double w = 1.0 - std::tanh(p.kappa) * std::cos(d);
  return std::log(p.alpha) + p.alpha * std::log(p.beta) - std::log(two_pi) -
         log_cosh(p.kappa) + std::log(skew) +
         density_detail::power_log_term(p.alpha, obs.x) -
         density_detail::scaled_exponent(e, w);
}

// Circular marginal: sine-skewed wrapped Cauchy with concentration
// tanh(kappa/2).
inline double weissvm_circular_marginal(const WeiSSVMParams& p, double theta) {
  const double d = wrap_angle(theta) - p.mu;
  const double rho = std::tanh(0.5 * p.kappa);
  const double skew = 1.0 + p.lambda * std::sin(d);
  const double denom = 1.0 + rho * rho - 2.0 * rho * std::cos(d);
  return (1.0 - rho * rho) * skew / (two_pi * denom);
}

// Linear marginal: Bessel-tilted Weibull density.
inline double weissvm_linear_marginal(const WeiSSVMParams& p, double x) {
  if (x < 0.0)
    throw std::invalid_argument("weissvm_linear_marginal: x must be >= 0");
  const double e = std::pow(p.beta * x, p.alpha);
  if (std::isinf(e)) return 0.0;
  if (x == 0.0) {
    if (p.alpha > 1.0) return 0.0;
    if (p.alpha < 1.0) return std::numeric_limits<double>::infinity();
    return p.beta / std::cosh(p.kappa);
  }
  const double c = e * std::tanh(p.kappa);
  const double log_value = log_bessel_i(0, c) - log_cosh(p.kappa) +
                           std::log(p.alpha) + p.alpha * std::log(p.beta) +
                           (p.alpha - 1.0) * std::log(x) - e;
  return std::exp(log_value);
}

// Conditional circular density of the angle given X = x: sine-skewed von
// Mises with concentration (beta x)^alpha tanh(kappa).
inline double weissvm_conditional_circular(const WeiSSVMParams& p, double x,
                                           double theta) {
  if (x < 0.0)
    throw std::invalid_argument("weissvm_conditional_circular: x must be >= 0");
  const double d = wrap_angle(theta) - p.mu;
  const double skew = 1.0 + p.lambda * std::sin(d);
  if (skew <= 0.0) return 0.0;
  const double tk = std::tanh(p.kappa);
  const double c = tk == 0.0 ? 0.0 : std::pow(p.beta * x, p.alpha) * tk;
  if (!std::isfinite(c))
    return std::cos(d) == 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::exp(std::log(skew) + c * std::cos(d) - std::log(two_pi) -
                  log_bessel_i(0, c));
}

// Conditional linear density of X given the angle: Weibull with shape alpha
// and rate b(theta) = beta (1 - tanh(kappa) cos(theta - mu))^{1/alpha}.
inline double weissvm_conditional_linear(const WeiSSVMParams& p, double theta,
                                         double x) {
  if (x < 0.0)
    throw std::invalid_argument("weissvm_conditional_linear: x must be >= 0");
  const double d = wrap_angle(theta) - p.mu;
  const double w = 1.0 - std::tanh(p.kappa) * std::cos(d);
  const double rate = p.beta * std::pow(w, 1.0 / p.alpha);
  const double e = std::pow(rate * x, p.alpha);
  if (std::isinf(e)) return 0.0;
  if (x == 0.0) {
    if (p.alpha > 1.0) return 0.0;
    if (p.alpha < 1.0) return std::numeric_limits<double>::infinity();
    return rate;
  }
  return std::exp(std::log(p.alpha) + p.alpha * std::log(rate) +
                  (p.alpha - 1.0) * std::log(x) - e);
}

// Log normalizing constant of the generalized-gamma extension.
inline double ggssvm_log_norm_const(const GGSSVMParams& p,
                                    const QuadratureConfig& config = {}) {
  const double ratio = p.alpha / p.gamma;
  const double q = legendre_q(ratio - 1.0, 0, std::cosh(p.kappa), config);
  return std::log(p.gamma) + p.alpha * std::log(p.beta) - std::log(two_pi) -
         ratio * log_cosh(p.kappa) - std::log(q);
}

// Log density of the generalized-gamma extension; gamma = alpha recovers
// weissvm_logpdf.
inline double ggssvm_logpdf(const GGSSVMParams& p, const CylObservation& obs,
                            const QuadratureConfig& config = {}) {
  if (obs.x < 0.0)
    throw std::invalid_argument("ggssvm_logpdf: x must be >= 0");
  const double d = obs.theta - p.mu;
  const double skew = 1.0 + p.lambda * std::sin(d);
  if (skew <= 0.0) return density_detail::neg_inf;
  const double e = std::pow(p.beta * obs.x, p.gamma);
  const double w = 1.0 - std::tanh(p.kappa) * std::cos(d);
  return ggssvm_log_norm_const(p, config) + std::log(skew) +
         density_detail::power_log_term(p.alpha, obs.x) -
         density_detail::scaled_exponent(e, w);
}

// Log density of the Johnson-Wehrly submodel (alpha = 1, lambda = 0).
inline double jw_logpdf(const JWParams& p, const CylObservation& obs) {
  if (obs.x < 0.0)
    throw std::invalid_argument("jw_logpdf: x must be >= 0");
  const double d = obs.theta - p.mu;
  const double w = 1.0 - std::tanh(p.kappa) * std::cos(d);
  return std::log(p.beta) - std::log(two_pi) - log_cosh(p.kappa) -
         p.beta * obs.x * w;
}

// Log density of the independence submodel: Weibull times cardioid.
inline double indep_logpdf(const IndepParams& p, const CylObservation& obs) {
  if (obs.x < 0.0)
    throw std::invalid_argument("indep_logpdf: x must be >= 0");
  const double d = obs.theta - p.mu;
  const double skew = 1.0 + p.lambda * std::sin(d);
  if (skew <= 0.0) return density_detail::neg_inf;
  const double e = std::pow(p.beta * obs.x, p.alpha);
  return std::log(p.alpha) + p.alpha * std::log(p.beta) +
         density_detail::power_log_term(p.alpha, obs.x) -
         (std::isinf(e) ? std::numeric_limits<double>::infinity() : e) +
         std::log(skew) - std::log(two_pi);
}

// Log of the series factor S = I_0(k1) I_0(k2)
//   + 2 sum_{j>=1} I_j(k2) I_{2j}(k1) cos(2j(mu1 - mu2)),
// computed with exponentially scaled Bessel terms so large concentrations
// stay in range.  Truncates when |term| < truncation_tol * |sum| three times
// in a row.
inline double ks_log_series_factor(const MSKSParams& p, double truncation_tol) {
  if (!(truncation_tol > 0.0))
    throw std::invalid_argument("ks_norm_const: truncation_tol must be > 0");
  const double delta = p.mu1 - p.mu2;
  double sum = bessel_i_scaled(0, p.kappa1) * bessel_i_scaled(0, p.kappa2);
  int quiet_terms = 0;
  for (int j = 1; j <= 10000; ++j) {
    const double term = 2.0 * bessel_i_scaled(j, p.kappa2) *
                        bessel_i_scaled(2 * j, p.kappa1) *
                        std::cos(2.0 * j * delta);
    sum += term;
    if (std::abs(term) < truncation_tol * std::abs(sum)) {
      if (++quiet_terms >= 3)
        return p.kappa1 + p.kappa2 + std::log(sum);
    } else {
      quiet_terms = 0;
    }
  }
  throw ConvergenceError("ks_norm_const: series did not converge");
}

// Log normalizing constant of the Gaussian-linear competitor family.
inline double ks_log_norm_const(const MSKSParams& p,
                                double truncation_tol = 1e-13) {
  return -(1.5 * std::log(two_pi) + std::log(p.sigma) +
           ks_log_series_factor(p, truncation_tol));
}

// Normalizing constant C with C^{-1} = (2 pi)^{3/2} sigma S.
inline double ks_norm_const(const MSKSParams& p, double truncation_tol) {
  return std::exp(ks_log_norm_const(p, truncation_tol));
}

// Log density of the Mardia-Sutton (kappa2 = 0) / Kato-Shimizu model on
// the full real line in x.
inline double ms_ks_logpdf(const MSKSParams& p, double theta, double x,
                           double truncation_tol = 1e-13) {
  if (!std::isfinite(x))
    throw std::invalid_argument("ms_ks_logpdf: x must be finite");
  const double t = wrap_angle(theta);
  const double mean = p.mu_prime + p.lambda * std::cos(t - p.nu);
  const double z = (x - mean) / p.sigma;
  return ks_log_norm_const(p, truncation_tol) - 0.5 * z * z +
         p.kappa1 * std::cos(t - p.mu1) + p.kappa2 * std::cos(2.0 * (t - p.mu2));
}

}  // namespace cylstats
