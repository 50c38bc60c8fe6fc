#pragma once

// Analytic moments of the five-parameter cylindrical model: mixed
// trigonometric moments of any order, the nine named first and second
// moments, the three circular-linear correlations, and the squared multiple
// correlation between the linear part and the angle.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cylstats/specfun.hpp"
#include "cylstats/types.hpp"

namespace cylstats {

struct MomentOrder {
  int n;  // linear power
  int m;  // harmonic order

  MomentOrder(int n_in, int m_in) : n(n_in), m(m_in) {
    if (n < 0 || m < 0)
      throw std::invalid_argument("MomentOrder: n and m must be >= 0");
  }
};

// E[X^n cos(m (Theta - mu))] = (cosh k)^{n/a} Q(n/a, m, cosh k) / beta^n.
inline double mixed_moment_cos(const WeiSSVMParams& p, MomentOrder ord,
                               const QuadratureConfig& config = {}) {
  if (ord.n == 0 && ord.m == 0) return 1.0;
  const double nu = ord.n / p.alpha;
  const double z = std::cosh(p.kappa);
  return std::exp(nu * log_cosh(p.kappa) - ord.n * std::log(p.beta)) *
         legendre_q(nu, ord.m, z, config);
}

// E[X^n sin(m (Theta - mu))]
//   = lambda (cosh k)^{n/a} (Q(n/a, m-1, cosh k) - Q(n/a, m+1, cosh k))
//     / (2 beta^n).
inline double mixed_moment_sin(const WeiSSVMParams& p, MomentOrder ord,
                               const QuadratureConfig& config = {}) {
  if (ord.m < 1)
    throw std::invalid_argument("mixed_moment_sin: m must be >= 1");
  if (p.lambda == 0.0) return 0.0;
  const double nu = ord.n / p.alpha;
  const double z = std::cosh(p.kappa);
  const double difference =
      legendre_q(nu, ord.m - 1, z, config) - legendre_q(nu, ord.m + 1, z, config);
  return p.lambda *
         std::exp(nu * log_cosh(p.kappa) - ord.n * std::log(p.beta)) *
         difference / 2.0;
}

// First and second moments of X, cos(Theta), sin(Theta) and the cross terms,
// for the absolute angle Theta (not the centered angle).
struct NamedMoments {
  double e_x;        // E[X]
  double e_x2;       // E[X^2]
  double e_cos;      // E[cos Theta]
  double e_cos2;     // E[cos^2 Theta]
  double e_sin;      // E[sin Theta]
  double e_sin2;     // E[sin^2 Theta]
  double e_x_cos;    // E[X cos Theta]
  double e_x_sin;    // E[X sin Theta]
  double e_cos_sin;  // E[cos Theta sin Theta]
};

namespace moment_detail {

// Centered closed forms: moments of the angle about mu.  The circular-only
// ones have elementary expressions; the mixed ones go through legendre_q.
struct CenteredMoments {
  double e_x, e_x2;
  double e_cos, e_sin;          // first harmonic
  double e_cos2h, e_sin2h;      // second harmonic: cos/sin of 2(Theta - mu)
  double e_x_cos, e_x_sin;
};

inline CenteredMoments centered_moments(const WeiSSVMParams& p,
                                        const QuadratureConfig& config = {}) {
  const double half = std::tanh(0.5 * p.kappa);
  const double sech2 = 1.0 - half * half;  // 1 / cosh^2(kappa/2)
  CenteredMoments c;
  c.e_x = mixed_moment_cos(p, {1, 0}, config);
  c.e_x2 = mixed_moment_cos(p, {2, 0}, config);
  c.e_cos = half;
  c.e_sin = 0.5 * p.lambda * sech2;
  c.e_cos2h = half * half;
  c.e_sin2h = 0.5 * p.lambda * (half - half * half * half);
  c.e_x_cos = mixed_moment_cos(p, {1, 1}, config);
  c.e_x_sin = mixed_moment_sin(p, {1, 1}, config);
  return c;
}

}  // namespace moment_detail

// The nine named moments, rotated from the centered angle to the absolute
// angle via cos(Theta) = cos((Theta-mu)+mu) expansions.
inline NamedMoments named_moments(const WeiSSVMParams& p,
                                  const QuadratureConfig& config = {}) {
  const auto c = moment_detail::centered_moments(p, config);
  const double cm = std::cos(p.mu);
  const double sm = std::sin(p.mu);
  const double c2m = std::cos(2.0 * p.mu);
  const double s2m = std::sin(2.0 * p.mu);
  NamedMoments m;
  m.e_x = c.e_x;
  m.e_x2 = c.e_x2;
  m.e_cos = cm * c.e_cos - sm * c.e_sin;
  m.e_sin = sm * c.e_cos + cm * c.e_sin;
  const double e_cos_2theta = c2m * c.e_cos2h - s2m * c.e_sin2h;
  const double e_sin_2theta = s2m * c.e_cos2h + c2m * c.e_sin2h;
  m.e_cos2 = 0.5 * (1.0 + e_cos_2theta);
  m.e_sin2 = 0.5 * (1.0 - e_cos_2theta);
  m.e_cos_sin = 0.5 * e_sin_2theta;
  m.e_x_cos = cm * c.e_x_cos - sm * c.e_x_sin;
  m.e_x_sin = sm * c.e_x_cos + cm * c.e_x_sin;
  return m;
}

struct Correlations {
  double r_xc;  // corr(X, cos(Theta - mu))
  double r_xs;  // corr(X, sin(Theta - mu))
  double r_cs;  // corr(cos(Theta - mu), sin(Theta - mu))
};

// The three correlations, computed about mu (they do not depend on mu).
// Throws std::domain_error when a variance degenerates to zero.
inline Correlations correlations(const WeiSSVMParams& p,
                                 const QuadratureConfig& config = {}) {
  const auto c = moment_detail::centered_moments(p, config);
  const double half = std::tanh(0.5 * p.kappa);
  const double sech2 = 1.0 - half * half;
  const double var_x = c.e_x2 - c.e_x * c.e_x;
  const double var_cos = 0.5 * sech2;
  const double var_sin = 0.5 * sech2 * (1.0 - 0.5 * p.lambda * p.lambda * sech2);
  const double cov_xc = c.e_x_cos - c.e_x * c.e_cos;
  const double cov_xs = c.e_x_sin - c.e_x * c.e_sin;
  const double cov_cs = -0.25 * p.lambda * half * sech2;
  if (!(var_x > 0.0) || !(var_cos > 0.0) || !(var_sin > 0.0))
    throw std::domain_error("correlations: degenerate variance");
  Correlations r;
  r.r_xc = cov_xc / std::sqrt(var_x * var_cos);
  r.r_xs = cov_xs / std::sqrt(var_x * var_sin);
  r.r_cs = cov_cs / std::sqrt(var_cos * var_sin);
  return r;
}

namespace moment_detail {

inline double r_squared_from(double r_xc, double r_xs, double r_cs) {
  const double denom = 1.0 - r_cs * r_cs;
  if (!(denom > 0.0))
    throw std::domain_error("circular_linear_correlation: |r_cs| = 1");
  return (r_xc * r_xc + r_xs * r_xs - 2.0 * r_cs * r_xc * r_xs) / denom;
}

}  // namespace moment_detail

// Squared multiple correlation of X with (cos Theta, sin Theta).
inline double circular_linear_correlation(const WeiSSVMParams& p,
                                          const QuadratureConfig& config = {}) {
  const Correlations r = correlations(p, config);
  return moment_detail::r_squared_from(r.r_xc, r.r_xs, r.r_cs);
}

// Sample analogue: plug empirical correlations of (x, cos theta, sin theta)
// into the same formula.  Requires n >= 4 and nondegenerate variances.
inline double sample_circular_linear_correlation(
    std::span<const CylObservation> data) {
  const std::size_t n = data.size();
  if (n < 4)
    throw std::invalid_argument(
        "sample_circular_linear_correlation: need at least 4 observations");
  double mx = 0.0, mc = 0.0, ms = 0.0;
  for (const auto& obs : data) {
    mx += obs.x;
    mc += std::cos(obs.theta);
    ms += std::sin(obs.theta);
  }
  mx /= n;
  mc /= n;
  ms /= n;
  double sxx = 0.0, scc = 0.0, sss = 0.0, sxc = 0.0, sxs = 0.0, scs = 0.0;
  for (const auto& obs : data) {
    const double dx = obs.x - mx;
    const double dc = std::cos(obs.theta) - mc;
    const double ds = std::sin(obs.theta) - ms;
    sxx += dx * dx;
    scc += dc * dc;
    sss += ds * ds;
    sxc += dx * dc;
    sxs += dx * ds;
    scs += dc * ds;
  }
  if (!(sxx > 0.0) || !(scc > 0.0) || !(sss > 0.0))
    throw std::domain_error(
        "sample_circular_linear_correlation: degenerate sample");
  const double r_xc = sxc / std::sqrt(sxx * scc);
  const double r_xs = sxs / std::sqrt(sxx * sss);
  const double r_cs = scs / std::sqrt(scc * sss);
  return moment_detail::r_squared_from(r_xc, r_xs, r_cs);
}

}  // namespace cylstats
