#pragma once

// Directional-linear extension on S^{k-1} x [0, inf): the sine-skewed
// Fisher-von Mises-Langevin angular part coupled with a Weibull-type linear
// part.  Density evaluation and the Legendre-based normalizing constant,
// with closed forms at kappa = 0 and for k = 2, 3.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylstats/densities.hpp"
#include "cylstats/specfun.hpp"
#include "cylstats/types.hpp"

namespace cylstats {

namespace directional_detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) {
  return std::sqrt(dot(a, a));
}

inline void require_unit(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) throw std::invalid_argument(std::string(what) + ": dimension must be >= 2");
  if (std::abs(norm(v) - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) + ": vector must have unit norm");
}

inline double log_sinh(double kappa) {
  if (kappa > 20.0) return kappa - std::log(2.0) + std::log1p(-std::exp(-2.0 * kappa));
  return std::log(std::sinh(kappa));
}

}  // namespace directional_detail

struct SphereParams {
  int k;
  std::vector<double> mu;
  std::vector<double> lambda_vec;
  double alpha;
  double beta;
  double kappa;

  SphereParams(std::vector<double> mu_in, std::vector<double> lambda_in,
               double alpha_in, double beta_in, double kappa_in)
      : k(static_cast<int>(mu_in.size())),
        mu(std::move(mu_in)),
        lambda_vec(std::move(lambda_in)),
        alpha(alpha_in),
        beta(beta_in),
        kappa(kappa_in) {
    directional_detail::require_unit(mu, "SphereParams mu");
    directional_detail::require_unit(lambda_vec, "SphereParams lambda_vec");
    if (lambda_vec.size() != mu.size())
      throw std::invalid_argument("SphereParams: mu and lambda_vec dimensions differ");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("SphereParams: alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("SphereParams: beta must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
      throw std::invalid_argument("SphereParams: kappa must be >= 0");
  }
};

// Unit tangent direction of theta as seen from mu.  Undefined at theta = +-mu.
inline std::vector<double> sign_vector(const std::vector<double>& theta_vec,
                                       const std::vector<double>& mu) {
  directional_detail::require_unit(theta_vec, "sign_vector theta");
  directional_detail::require_unit(mu, "sign_vector mu");
  if (theta_vec.size() != mu.size())
    throw std::invalid_argument("sign_vector: dimension mismatch");
  const double d = directional_detail::dot(theta_vec, mu);
  std::vector<double> tangent(theta_vec.size());
  for (std::size_t i = 0; i < theta_vec.size(); ++i)
    tangent[i] = theta_vec[i] - d * mu[i];
  const double len = directional_detail::norm(tangent);
  if (len <= 1e-12)
    throw std::domain_error("sign_vector: theta is collinear with mu");
  for (double& v : tangent) v /= len;
  return tangent;
}

namespace directional_detail {

inline double log_norm_const(const SphereParams& p) {
  const double half_k = 0.5 * static_cast<double>(p.k);
  const double base = std::log(p.alpha) + p.alpha * std::log(p.beta);
  if (p.kappa < 1e-4) {
    // Uniform-sphere limit; the general expression is 0/0 at kappa = 0.
    return base + log_gamma(half_k) - std::log(2.0) - half_k * std::log(pi);
  }
  const double mu_order = half_k - 1.0;
  const double z = std::cosh(p.kappa);
  const double legendre = legendre_neg_order(mu_order, mu_order - 1.0, z);
  return base + mu_order * log_sinh(p.kappa) - half_k * std::log(two_pi) -
         log_cosh(p.kappa) - std::log(legendre);
}

}  // namespace directional_detail

// Normalizing constant C_k of the directional-linear density.
inline double weissfvml_norm_const(const SphereParams& p) {
  return std::exp(directional_detail::log_norm_const(p));
}

// Log-density at a unit direction and a nonnegative linear value.  At
// theta = +-mu the skew factor degenerates to 1 (its prefactor vanishes).
inline double weissfvml_logpdf(const SphereParams& p,
                               const std::vector<double>& theta_vec,
                               double x) {
  directional_detail::require_unit(theta_vec, "weissfvml_logpdf theta");
  if (theta_vec.size() != p.mu.size())
    throw std::invalid_argument("weissfvml_logpdf: dimension mismatch");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("weissfvml_logpdf: x must be finite and >= 0");

  const double d = std::clamp(directional_detail::dot(theta_vec, p.mu), -1.0, 1.0);
  std::vector<double> tangent(theta_vec.size());
  for (std::size_t i = 0; i < theta_vec.size(); ++i)
    tangent[i] = theta_vec[i] - d * p.mu[i];
  const double len = directional_detail::norm(tangent);

  double skew = 1.0;
  if (len > 1e-12) {
    double s = 0.0;
    for (std::size_t i = 0; i < tangent.size(); ++i)
      s += p.lambda_vec[i] * tangent[i] / len;
    skew = 1.0 + std::sqrt(std::max(0.0, 1.0 - d * d)) * s;
  }
  if (skew <= 0.0) return -std::numeric_limits<double>::infinity();

  const double e = std::pow(p.beta * x, p.alpha);
  const double w = 1.0 - std::tanh(p.kappa) * d;
  return directional_detail::log_norm_const(p) + std::log(skew) +
         density_detail::power_log_term(p.alpha, x) -
         density_detail::scaled_exponent(e, w);
}

}  // namespace cylstats
