#pragma once

// Regression curves implied by the joint model: the conditional mean and
// variance of the linear part given an angle, and the conditional mean
// direction and mean resultant length of the angle given a linear value.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "cylstats/specfun.hpp"
#include "cylstats/types.hpp"

namespace cylstats {

namespace regression_detail {

inline double scale_factor(const WeiSSVMParams& p, double theta) {
  return 1.0 - std::tanh(p.kappa) * std::cos(theta - p.mu);
}

// Concentration of the von Mises-like conditional angular density at X = x.
inline double angular_concentration(const WeiSSVMParams& p, double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("conditional direction: x must be finite and >= 0");
  const double tk = std::tanh(p.kappa);
  if (tk == 0.0 || x == 0.0) return 0.0;
  return std::pow(p.beta * x, p.alpha) * tk;
}

// I_1(c) / (c I_0(c)), stable across the whole range of c >= 0.
inline double bessel_ratio_over_c(double c) {
  if (c < 1e-4) return 0.5 * (1.0 - c * c / 8.0);
  if (!std::isfinite(c)) return 0.0;
  return std::exp(log_bessel_i(1, c) - log_bessel_i(0, c) - std::log(c));
}

}  // namespace regression_detail

// E[X | Theta = theta]: a Weibull mean whose rate varies with the angle.
inline double cond_mean_x(const WeiSSVMParams& p, double theta) {
  const double s = regression_detail::scale_factor(p, theta);
  return std::exp(log_gamma(1.0 / p.alpha + 1.0)) /
         (p.beta * std::pow(s, 1.0 / p.alpha));
}

// Var[X | Theta = theta].
inline double cond_var_x(const WeiSSVMParams& p, double theta) {
  const double g1 = std::exp(log_gamma(1.0 / p.alpha + 1.0));
  const double g2 = std::exp(log_gamma(2.0 / p.alpha + 1.0));
  const double s = regression_detail::scale_factor(p, theta);
  return (g2 - g1 * g1) /
         (p.beta * p.beta * std::pow(s, 2.0 / p.alpha));
}

// Mean direction of Theta given X = x.  Undefined (no result) exactly when
// the conditional density is uniform: zero concentration and zero skewness.
inline std::optional<double> cond_mean_direction(const WeiSSVMParams& p,
                                                 double x) {
  const double c = regression_detail::angular_concentration(p, x);
  if (c == 0.0 && p.lambda == 0.0) return std::nullopt;
  if (std::isinf(c)) return wrap_angle(p.mu);
  return wrap_angle(p.mu + std::atan2(p.lambda, c));
}

// Mean resultant length of Theta given X = x; rises from lambda-driven
// values at x = 0 toward 1 as the conditional concentration grows.
inline double cond_mean_resultant(const WeiSSVMParams& p, double x) {
  const double c = regression_detail::angular_concentration(p, x);
  if (std::isinf(c) || c > 1e12) return 1.0;
  const double ratio = regression_detail::bessel_ratio_over_c(c);
  return ratio * std::hypot(c, p.lambda);
}

}  // namespace cylstats
