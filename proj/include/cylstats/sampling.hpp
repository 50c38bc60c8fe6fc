#pragma once

// Exact sampling for the five-parameter cylindrical model via the
// three-step scheme: a wrapped Cauchy draw for the base angle, a sine-skew
// acceptance/reflection step, then an inverse-transform Weibull draw from
// the conditional linear law.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cylstats/types.hpp"

namespace cylstats {

// Deterministic uniform stream on [0, 1).  mt19937_64 output is specified by
// the standard, so sequences are reproducible across platforms for a given
// seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : rng_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double next_uniform() { return (rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

// Maps one uniform variate to a wrapped Cauchy draw with location mu and
// concentration rho: wrap(mu + gamma tan(pi (u - 1/2))) with gamma = -ln rho.
// rho = 0 degenerates to the uniform circular law and is handled explicitly.
inline double wrapped_cauchy_from_uniform(double mu, double rho, double u) {
  if (!(rho >= 0.0) || !(rho < 1.0))
    throw std::invalid_argument("wrapped_cauchy: rho must be in [0, 1)");
  if (!(u >= 0.0) || !(u < 1.0))
    throw std::invalid_argument("wrapped_cauchy: u must be in [0, 1)");
  if (rho == 0.0) return -pi + two_pi * u;
  const double gamma = -std::log(rho);
  return wrap_angle(mu + gamma * std::tan(pi * (u - 0.5)));
}

inline double sample_wrapped_cauchy(double mu, double rho, RandomSource& src) {
  return wrapped_cauchy_from_uniform(mu, rho, src.next_uniform());
}

// Sine-skew step: keep theta1 with probability (1 + lambda sin(theta1 - mu))/2,
// otherwise reflect about the symmetry center mu.
inline double sine_skew_accept(double theta1, double mu, double lambda,
                               double u) {
  if (!(std::abs(lambda) <= 1.0))
    throw std::invalid_argument("sine_skew_accept: |lambda| must be <= 1");
  if (u < 0.5 * (1.0 + lambda * std::sin(theta1 - mu))) return wrap_angle(theta1);
  return wrap_angle(2.0 * mu - theta1);
}

// Inverse-transform Weibull draw with shape alpha and rate scale_b:
// X = (-ln U)^{1/alpha} / scale_b.
inline double weibull_from_uniform(double alpha, double scale_b, double u) {
  if (!(alpha > 0.0) || !(scale_b > 0.0))
    throw std::invalid_argument("weibull_from_uniform: alpha and scale_b must be > 0");
  return std::pow(-std::log(u), 1.0 / alpha) / scale_b;
}

inline double sample_weibull_scaled(double alpha, double scale_b,
                                    RandomSource& src) {
  // Guard against the measure-zero u = 0, which would map to +inf.
  const double u = std::max(src.next_uniform(), 0x1.0p-53);
  return weibull_from_uniform(alpha, scale_b, u);
}

// n independent draws from the five-parameter model.  Consumes exactly three
// uniforms per draw, in a fixed order, so output is reproducible per seed.
inline std::vector<CylObservation> sample_weissvm(const WeiSSVMParams& p,
                                                  std::size_t n,
                                                  RandomSource& src) {
  std::vector<CylObservation> draws;
  draws.reserve(n);
  const double rho = std::tanh(0.5 * p.kappa);
  const double tk = std::tanh(p.kappa);
  const double inv_alpha = 1.0 / p.alpha;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta1 = sample_wrapped_cauchy(p.mu, rho, src);
    const double theta =
        sine_skew_accept(theta1, p.mu, p.lambda, src.next_uniform());
    const double rate =
        p.beta * std::pow(1.0 - tk * std::cos(theta - p.mu), inv_alpha);
    draws.emplace_back(theta, sample_weibull_scaled(p.alpha, rate, src));
  }
  return draws;
}

}  // namespace cylstats
