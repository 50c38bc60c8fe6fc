#pragma once

// Parameter and observation types for the cylindrical model family.  All
// constructors validate their invariants and normalize angles, so a
// constructed object is always usable; instances are immutable by convention
// after construction.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cylstats {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Normalizes an angle in radians into [-pi, pi).  Values already in range
// pass through unchanged, so normalization is idempotent to the bit (CSV
// write/read cycles must not drift).
inline double wrap_angle(double angle) {
  if (!std::isfinite(angle))
    throw std::invalid_argument("wrap_angle: angle must be finite");
  if (angle >= -pi && angle < pi) return angle;
  double w = std::fmod(angle + pi, two_pi);
  if (w < 0.0) w += two_pi;
  w -= pi;
  if (w >= pi) w = -pi;
  return w;
}

// Normalizes an angle with period pi into [-pi/2, pi/2), for parameters that
// enter only through cos(2(theta - value)).
inline double wrap_angle_half(double angle) {
  if (!std::isfinite(angle))
    throw std::invalid_argument("wrap_angle_half: angle must be finite");
  double w = std::fmod(angle + 0.5 * pi, pi);
  if (w < 0.0) w += pi;
  w -= 0.5 * pi;
  if (w >= 0.5 * pi) w = -0.5 * pi;
  return w;
}

// One (angle, length) observation.  The angle is normalized to [-pi, pi).
// The linear part is any finite real: the cylinder models require x >= 0 and
// enforce that at evaluation time, while the Mardia-Sutton and Kato-Shimizu
// models live on the whole real line.
struct CylObservation {
  double theta;
  double x;

  CylObservation(double theta_in, double x_in)
      : theta(wrap_angle(theta_in)), x(x_in) {
    if (!std::isfinite(x))
      throw std::invalid_argument("CylObservation: x must be finite");
  }
};

// Five-parameter cylindrical model: linear shape alpha > 0, linear scale
// beta > 0, circular location mu (radians), circular-linear dependence
// kappa >= 0, circular skewness lambda in [-1, 1].
struct WeiSSVMParams {
  double alpha;
  double beta;
  double mu;
  double kappa;
  double lambda;

  WeiSSVMParams(double alpha_in, double beta_in, double mu_in, double kappa_in,
                double lambda_in)
      : alpha(alpha_in),
        beta(beta_in),
        mu(wrap_angle(mu_in)),
        kappa(kappa_in),
        lambda(lambda_in) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("WeiSSVMParams: alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("WeiSSVMParams: beta must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
      throw std::invalid_argument("WeiSSVMParams: kappa must be >= 0");
    if (!(std::abs(lambda) <= 1.0))
      throw std::invalid_argument("WeiSSVMParams: lambda must be in [-1, 1]");
  }
};

// Generalized-gamma extension: adds the exponential-term exponent gamma > 0;
// gamma = alpha recovers WeiSSVMParams.
struct GGSSVMParams {
  double alpha;
  double beta;
  double gamma;
  double mu;
  double kappa;
  double lambda;

  GGSSVMParams(double alpha_in, double beta_in, double gamma_in, double mu_in,
               double kappa_in, double lambda_in)
      : alpha(alpha_in),
        beta(beta_in),
        gamma(gamma_in),
        mu(wrap_angle(mu_in)),
        kappa(kappa_in),
        lambda(lambda_in) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("GGSSVMParams: alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("GGSSVMParams: beta must be > 0");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      throw std::invalid_argument("GGSSVMParams: gamma must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
      throw std::invalid_argument("GGSSVMParams: kappa must be >= 0");
    if (!(std::abs(lambda) <= 1.0))
      throw std::invalid_argument("GGSSVMParams: lambda must be in [-1, 1]");
  }
};

// Exponential-linear, von Mises-conditional submodel (alpha = 1, lambda = 0).
struct JWParams {
  double beta;
  double mu;
  double kappa;

  JWParams(double beta_in, double mu_in, double kappa_in)
      : beta(beta_in), mu(wrap_angle(mu_in)), kappa(kappa_in) {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("JWParams: beta must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
      throw std::invalid_argument("JWParams: kappa must be >= 0");
  }
};

// Independence submodel (kappa = 0): Weibull linear part times a cardioid
// circular part with skewness lambda.
struct IndepParams {
  double alpha;
  double beta;
  double mu;
  double lambda;

  IndepParams(double alpha_in, double beta_in, double mu_in, double lambda_in)
      : alpha(alpha_in),
        beta(beta_in),
        mu(wrap_angle(mu_in)),
        lambda(lambda_in) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("IndepParams: alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("IndepParams: beta must be > 0");
    if (!(std::abs(lambda) <= 1.0))
      throw std::invalid_argument("IndepParams: lambda must be in [-1, 1]");
  }
};

// Gaussian-linear competitor with a generalized von Mises circular part.
// kappa2 = 0 gives the Mardia-Sutton model; kappa2 > 0 the Kato-Shimizu one.
// The conditional linear mean is mu_prime + lambda * cos(theta - nu); mu2 is
// identified only modulo pi and is stored in [-pi/2, pi/2).
struct MSKSParams {
  double mu_prime;
  double sigma;
  double lambda;
  double nu;
  double mu1;
  double mu2;
  double kappa1;
  double kappa2;

  MSKSParams(double mu_prime_in, double sigma_in, double lambda_in,
             double nu_in, double mu1_in, double mu2_in, double kappa1_in,
             double kappa2_in)
      : mu_prime(mu_prime_in),
        sigma(sigma_in),
        lambda(lambda_in),
        nu(wrap_angle(nu_in)),
        mu1(wrap_angle(mu1_in)),
        mu2(wrap_angle_half(mu2_in)),
        kappa1(kappa1_in),
        kappa2(kappa2_in) {
    if (!std::isfinite(mu_prime))
      throw std::invalid_argument("MSKSParams: mu_prime must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw std::invalid_argument("MSKSParams: sigma must be > 0");
    // lambda = 0 is accepted for evaluation (nu is then unidentified); the
    // fitting layer keeps lambda strictly positive.
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("MSKSParams: lambda must be >= 0");
    if (!(kappa1 >= 0.0) || !std::isfinite(kappa1))
      throw std::invalid_argument("MSKSParams: kappa1 must be >= 0");
    if (!(kappa2 >= 0.0) || !std::isfinite(kappa2))
      throw std::invalid_argument("MSKSParams: kappa2 must be >= 0");
  }
};

// Stable log(cosh(kappa)); never overflows for finite kappa.
inline double log_cosh(double kappa) {
  const double a = std::abs(kappa);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace cylstats
