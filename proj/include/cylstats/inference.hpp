#pragma once

// Maximum-likelihood machinery: log-likelihoods, the analytic score of the
// five-parameter model, constrained fitting through smooth transforms with
// multi-start Nelder-Mead, information criteria, and the two likelihood
// ratio tests.  Nested submodel optima are injected as extra starting points
// so nested maximized log-likelihoods are ordered by construction.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cylstats/densities.hpp"
#include "cylstats/optimize.hpp"
#include "cylstats/sampling.hpp"
#include "cylstats/specfun.hpp"
#include "cylstats/types.hpp"

namespace cylstats {

enum class Model { weissvm, ggssvm, jw, indep, ms, ks };

inline const char* model_name(Model model) {
  switch (model) {
    case Model::weissvm: return "weissvm";
    case Model::ggssvm: return "ggssvm";
    case Model::jw: return "jw";
    case Model::indep: return "indep";
    case Model::ms: return "ms";
    case Model::ks: return "ks";
  }
  throw std::invalid_argument("model_name: unknown model");
}

inline Model model_from_name(std::string_view name) {
  if (name == "weissvm") return Model::weissvm;
  if (name == "ggssvm") return Model::ggssvm;
  if (name == "jw") return Model::jw;
  if (name == "indep") return Model::indep;
  if (name == "ms") return Model::ms;
  if (name == "ks") return Model::ks;
  throw std::invalid_argument("unknown model name: " + std::string(name));
}

inline int free_param_count(Model model) {
  switch (model) {
    case Model::weissvm: return 5;
    case Model::ggssvm: return 6;
    case Model::jw: return 3;
    case Model::indep: return 4;
    case Model::ms: return 6;
    case Model::ks: return 8;
  }
  throw std::invalid_argument("free_param_count: unknown model");
}

using ParamMap = std::map<std::string, double>;

struct FitResult {
  Model model = Model::weissvm;
  ParamMap estimates;
  double mll = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n = 0;
  int iterations = 0;
  bool converged = false;
  double final_simplex_spread = 0.0;
};

struct TestResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  FitResult null_fit;
  FitResult alt_fit;
};

// Log-likelihood of the five-parameter model over a dataset; -inf when the
// skew factor is nonpositive anywhere or an exponential term overflows.
inline double weissvm_loglik(const WeiSSVMParams& p,
                             std::span<const CylObservation> data) {
  if (data.empty())
    throw std::invalid_argument("weissvm_loglik: data must be nonempty");
  const double n = static_cast<double>(data.size());
  const double log_beta = std::log(p.beta);
  const double tk = std::tanh(p.kappa);
  double skew_sum = 0.0;
  double exp_sum = 0.0;
  double log_x_sum = 0.0;
  for (const auto& obs : data) {
    if (obs.x < 0.0)
      throw std::invalid_argument("weissvm_loglik: x must be >= 0");
    const double d = obs.theta - p.mu;
    const double skew = 1.0 + p.lambda * std::sin(d);
    if (skew <= 0.0) return -std::numeric_limits<double>::infinity();
    skew_sum += std::log(skew);
    const double lx = std::log(obs.x);
    log_x_sum += lx;
    exp_sum += std::exp(p.alpha * (log_beta + lx)) * (1.0 - tk * std::cos(d));
  }
  return n * (std::log(p.alpha) + p.alpha * log_beta - std::log(two_pi) -
              log_cosh(p.kappa)) +
         skew_sum + (p.alpha - 1.0) * log_x_sum - exp_sum;
}

// Analytic score (d/d alpha, d/d beta, d/d mu, d/d kappa, d/d lambda) of the
// log-likelihood at an interior parameter point.
inline std::array<double, 5> weissvm_score(const WeiSSVMParams& p,
                                           std::span<const CylObservation> data) {
  if (data.empty())
    throw std::invalid_argument("weissvm_score: data must be nonempty");
  if (std::abs(p.lambda) == 1.0)
    throw std::domain_error("weissvm_score: |lambda| = 1 is a boundary point");
  const double n = static_cast<double>(data.size());
  const double log_beta = std::log(p.beta);
  const double tk = std::tanh(p.kappa);
  const double sech2 = 1.0 - tk * tk;
  double d_alpha = n / p.alpha + n * log_beta;
  double d_beta = n * p.alpha / p.beta;
  double d_mu = 0.0;
  double d_kappa = -n * tk;
  double d_lambda = 0.0;
  for (const auto& obs : data) {
    const double d = obs.theta - p.mu;
    const double sin_d = std::sin(d);
    const double cos_d = std::cos(d);
    const double skew = 1.0 + p.lambda * sin_d;
    if (skew <= 0.0)
      throw std::domain_error("weissvm_score: zero skew factor in data");
    const double log_bx = log_beta + std::log(obs.x);
    const double e = std::exp(p.alpha * log_bx);
    const double w = 1.0 - tk * cos_d;
    d_alpha += std::log(obs.x) - e * log_bx * w;
    d_beta -= (p.alpha / p.beta) * e * w;
    d_mu += -p.lambda * cos_d / skew + tk * e * sin_d;
    d_kappa += sech2 * e * cos_d;
    d_lambda += sin_d / skew;
  }
  return {d_alpha, d_beta, d_mu, d_kappa, d_lambda};
}

namespace inference_detail {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double kappa_zero_floor = 6e-6;   // exp(-12), below snap level
inline constexpr double log_kappa_snap = -10.0;    // log kappa below => report 0

struct DataArrays {
  std::vector<double> theta;
  std::vector<double> x;
  std::vector<double> log_x;
  double sum_log_x = 0.0;
  std::size_t n = 0;
};

inline DataArrays make_arrays(std::span<const CylObservation> data,
                              bool require_positive_x) {
  if (data.empty()) throw std::invalid_argument("fit: data must be nonempty");
  DataArrays a;
  a.n = data.size();
  a.theta.reserve(a.n);
  a.x.reserve(a.n);
  a.log_x.reserve(a.n);
  for (const auto& obs : data) {
    if (require_positive_x && !(obs.x > 0.0))
      throw std::invalid_argument(
          "fit: this model requires strictly positive linear values");
    a.theta.push_back(obs.theta);
    a.x.push_back(obs.x);
    const double lx = require_positive_x ? std::log(obs.x) : 0.0;
    a.log_x.push_back(lx);
    a.sum_log_x += lx;
  }
  return a;
}

// Transform helpers: optimization runs in unconstrained coordinates.
inline double to_log(double v) { return std::log(v); }
inline double kappa_to_t(double kappa) {
  return std::log(std::max(kappa, kappa_zero_floor));
}
inline double lambda_to_t(double lambda) {
  return std::atanh(std::clamp(lambda, -1.0 + 1e-12, 1.0 - 1e-12));
}
inline double kappa_from_t(double t) { return std::exp(t); }
inline double lambda_from_t(double t) { return std::tanh(t); }
inline double reported_kappa(double t) {
  return t < log_kappa_snap ? 0.0 : std::exp(t);
}

// Fast likelihood kernels.  Each takes raw constrained parameters and the
// precomputed arrays; all return -inf on infeasible or overflowing points.

inline double loglik_weissvm_raw(double alpha, double beta, double mu,
                                 double kappa, double lambda,
                                 const DataArrays& a) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(kappa) ||
      alpha <= 0.0 || beta <= 0.0 || kappa < 0.0 || std::abs(lambda) > 1.0)
    return neg_inf;
  const double log_beta = std::log(beta);
  const double tk = std::tanh(kappa);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    const double d = a.theta[i] - mu;
    const double skew = 1.0 + lambda * std::sin(d);
    if (skew <= 0.0) return neg_inf;
    acc += std::log(skew) -
           std::exp(alpha * (log_beta + a.log_x[i])) *
               (1.0 - tk * std::cos(d));
  }
  const double value = a.n * (std::log(alpha) + alpha * log_beta -
                              std::log(two_pi) - log_cosh(kappa)) +
                       (alpha - 1.0) * a.sum_log_x + acc;
  return std::isfinite(value) ? value : neg_inf;
}

inline double loglik_ggssvm_raw(double alpha, double beta, double gamma,
                                double mu, double kappa, double lambda,
                                const DataArrays& a) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) ||
      !std::isfinite(kappa) || alpha <= 0.0 || beta <= 0.0 || gamma <= 0.0 ||
      kappa < 0.0 || kappa > 50.0 || std::abs(lambda) > 1.0)
    return neg_inf;
  const double ratio = alpha / gamma;
  double log_q;
  try {
    log_q = std::log(legendre_q(ratio - 1.0, 0, std::cosh(kappa)));
  } catch (const ConvergenceError&) {
    return neg_inf;
  }
  const double log_c = std::log(gamma) + alpha * std::log(beta) -
                       std::log(two_pi) - ratio * log_cosh(kappa) - log_q;
  const double log_beta = std::log(beta);
  const double tk = std::tanh(kappa);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    const double d = a.theta[i] - mu;
    const double skew = 1.0 + lambda * std::sin(d);
    if (skew <= 0.0) return neg_inf;
    acc += std::log(skew) -
           std::exp(gamma * (log_beta + a.log_x[i])) *
               (1.0 - tk * std::cos(d));
  }
  const double value =
      a.n * log_c + (alpha - 1.0) * a.sum_log_x + acc;
  return std::isfinite(value) ? value : neg_inf;
}

inline double loglik_jw_raw(double beta, double mu, double kappa,
                            const DataArrays& a) {
  if (!std::isfinite(beta) || !std::isfinite(kappa) || beta <= 0.0 ||
      kappa < 0.0)
    return neg_inf;
  const double tk = std::tanh(kappa);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    const double d = a.theta[i] - mu;
    acc += a.x[i] * (1.0 - tk * std::cos(d));
  }
  const double value =
      a.n * (std::log(beta) - std::log(two_pi) - log_cosh(kappa)) - beta * acc;
  return std::isfinite(value) ? value : neg_inf;
}

inline double loglik_indep_raw(double alpha, double beta, double mu,
                               double lambda, const DataArrays& a) {
  return loglik_weissvm_raw(alpha, beta, mu, 0.0, lambda, a);
}

inline double loglik_msks_raw(double mu_prime, double sigma, double lambda,
                              double nu, double mu1, double mu2, double kappa1,
                              double kappa2, const DataArrays& a) {
  if (!std::isfinite(mu_prime) || !std::isfinite(sigma) ||
      !std::isfinite(lambda) || !std::isfinite(kappa1) ||
      !std::isfinite(kappa2) || sigma <= 0.0 || lambda <= 0.0 ||
      kappa1 < 0.0 || kappa2 < 0.0)
    return neg_inf;
  double log_c;
  try {
    MSKSParams p(mu_prime, sigma, lambda, nu, mu1, mu2, kappa1, kappa2);
    log_c = ks_log_norm_const(p, 1e-13);
  } catch (const ConvergenceError&) {
    return neg_inf;
  } catch (const std::invalid_argument&) {
    return neg_inf;
  }
  const double inv_2s2 = 0.5 / (sigma * sigma);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    const double t = a.theta[i];
    const double r = a.x[i] - mu_prime - lambda * std::cos(t - nu);
    acc += -r * r * inv_2s2 + kappa1 * std::cos(t - mu1) +
           kappa2 * std::cos(2.0 * (t - mu2));
  }
  const double value = a.n * log_c + acc;
  return std::isfinite(value) ? value : neg_inf;
}

// Method-of-moments style starting values.

inline double circular_mean(const std::vector<double>& theta) {
  double s = 0.0, c = 0.0;
  for (double t : theta) {
    s += std::sin(t);
    c += std::cos(t);
  }
  return std::atan2(s, c);
}

// Approximate inverse of the von Mises mean-resultant function A(kappa).
inline double vm_concentration_from_resultant(double r) {
  r = std::clamp(r, 0.0, 0.98);
  if (r < 0.53) return 2.0 * r + r * r * r + 5.0 * std::pow(r, 5) / 6.0;
  if (r < 0.85) return -0.4 + 1.39 * r + 0.43 / (1.0 - r);
  return 1.0 / (r * r * r - 4.0 * r * r + 3.0 * r);
}

// Marginal Weibull maximum likelihood on the linear part: shape by a damped
// Newton iteration on the profile equation, values normalized by max(x) so
// powers never overflow.
inline std::pair<double, double> weibull_mle(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double x_max = 0.0;
  for (double v : x) x_max = std::max(x_max, v);
  std::vector<double> log_y(n);
  double mean_log_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    log_y[i] = std::log(x[i] / x_max);
    mean_log_y += log_y[i];
  }
  mean_log_y /= static_cast<double>(n);
  double sd = 0.0;
  for (double ly : log_y) sd += (ly - mean_log_y) * (ly - mean_log_y);
  sd = std::sqrt(sd / static_cast<double>(n));

  double alpha = sd > 1e-12 ? pi / (std::sqrt(6.0) * sd) : 10.0;
  alpha = std::clamp(alpha, 0.05, 100.0);
  double lo = 1e-3, hi = 1e3;
  for (int iter = 0; iter < 80; ++iter) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (double ly : log_y) {
      const double p = std::exp(alpha * ly);
      s0 += p;
      s1 += p * ly;
      s2 += p * ly * ly;
    }
    const double g = 1.0 / alpha + mean_log_y - s1 / s0;
    if (g > 0.0) lo = std::max(lo, alpha);
    else hi = std::min(hi, alpha);
    const double gp = -1.0 / (alpha * alpha) - (s2 * s0 - s1 * s1) / (s0 * s0);
    double next = gp < 0.0 ? alpha - g / gp : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - alpha) < 1e-12 * alpha) {
      alpha = next;
      break;
    }
    alpha = next;
  }
  double s0 = 0.0;
  for (double ly : log_y) s0 += std::exp(alpha * ly);
  const double beta =
      std::pow(static_cast<double>(n) / s0, 1.0 / alpha) / x_max;
  return {alpha, beta};
}

struct MomInit {
  double alpha, beta, mu, kappa, lambda;
};

inline MomInit weissvm_mom_init(const DataArrays& a) {
  MomInit init{};
  init.mu = circular_mean(a.theta);
  auto [alpha, beta] = weibull_mle(a.x);
  init.alpha = alpha;
  init.beta = beta;
  double mean_cos = 0.0, mean_sin = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    mean_cos += std::cos(a.theta[i] - init.mu);
    mean_sin += std::sin(a.theta[i] - init.mu);
  }
  mean_cos /= static_cast<double>(a.n);
  mean_sin /= static_cast<double>(a.n);
  const double r = std::clamp(mean_cos, -0.99, 0.99);
  init.kappa = std::clamp(2.0 * std::atanh(std::max(r, 0.0)), 0.01, 5.0);
  const double ch = std::cosh(0.5 * init.kappa);
  init.lambda = std::clamp(2.0 * mean_sin * ch * ch, -0.95, 0.95);
  return init;
}

// Least squares of x on (1, cos theta, sin theta) for the Gaussian-linear
// competitors; solved by elimination on the 3x3 normal equations.
struct MsksInit {
  double mu_prime, sigma, lambda, nu, mu1, mu2, kappa1, kappa2;
};

inline MsksInit msks_init(const DataArrays& a, bool with_second_harmonic) {
  const double n = static_cast<double>(a.n);
  double m[3][4] = {};
  for (std::size_t i = 0; i < a.n; ++i) {
    const double basis[3] = {1.0, std::cos(a.theta[i]), std::sin(a.theta[i])};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
      m[r][3] += basis[r] * a.x[i];
    }
  }
  double coef[3] = {0.0, 0.0, 0.0};
  bool solved = true;
  for (int col = 0; col < 3 && solved; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-9 * n) {
      solved = false;
      break;
    }
    for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = 0; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  if (solved)
    for (int r = 0; r < 3; ++r) coef[r] = m[r][3] / m[r][r];

  MsksInit init{};
  double mean_x = 0.0;
  for (double v : a.x) mean_x += v;
  mean_x /= n;
  if (!solved) {
    init.mu_prime = mean_x;
    init.lambda = 0.1;
    init.nu = 0.0;
  } else {
    init.mu_prime = coef[0];
    init.lambda = std::max(std::hypot(coef[1], coef[2]), 1e-3);
    init.nu = std::atan2(coef[2], coef[1]);
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    const double r =
        a.x[i] - init.mu_prime - init.lambda * std::cos(a.theta[i] - init.nu);
    rss += r * r;
  }
  init.sigma = std::max(std::sqrt(rss / n), 1e-6 * (1.0 + std::abs(mean_x)));
  init.mu1 = circular_mean(a.theta);
  double mean_cos = 0.0, mean_sin = 0.0;
  for (double t : a.theta) {
    mean_cos += std::cos(t - init.mu1);
    mean_sin += std::sin(t - init.mu1);
  }
  const double resultant = std::hypot(mean_cos, mean_sin) / n;
  init.kappa1 = std::clamp(vm_concentration_from_resultant(resultant), 0.01, 20.0);
  init.kappa2 = with_second_harmonic ? 0.5 : 0.0;
  init.mu2 = 0.0;
  return init;
}

}  // namespace inference_detail

// Fits one model to the data by multi-start Nelder-Mead in transformed
// coordinates.  A caller-supplied init (parameter record, constrained scale)
// is used as an additional starting point.  Submodel optima are always added
// as starting points for their supermodels (jw/indep for weissvm, weissvm
// for ggssvm, ms for ks), which makes nested maximized log-likelihoods
// monotone by construction.
inline FitResult fit(Model model, const std::vector<CylObservation>& data,
                     const std::optional<ParamMap>& init = std::nullopt);

namespace inference_detail {

struct Plan {
  optimize_detail::Objective objective;
  std::vector<std::vector<double>> starts;
  // Maps the optimizer point to reported parameter estimates.
  std::function<ParamMap(const std::vector<double>&)> report;
  // Evaluates the log-likelihood at reported (constrained) estimates.
  std::function<double(const ParamMap&)> loglik_at;
};

// base is taken by value: callers pass elements of starts, which push_back
// would otherwise invalidate mid-loop.
inline void add_jitters(std::vector<std::vector<double>>& starts,
                        std::vector<double> base, Model model,
                        int count = 5) {
  RandomSource rng(0x5EED0000u + static_cast<std::uint64_t>(model));
  for (int j = 0; j < count; ++j) {
    std::vector<double> t = base;
    for (double& v : t) v += rng.next_uniform() - 0.5;
    starts.push_back(std::move(t));
  }
}

inline Plan make_plan(Model model, const DataArrays& a,
                      const std::vector<CylObservation>& data,
                      const std::optional<ParamMap>& init) {
  Plan plan;
  switch (model) {
    case Model::weissvm: {
      plan.objective = [&a](const std::vector<double>& t) {
        return loglik_weissvm_raw(std::exp(t[0]), std::exp(t[1]), t[2],
                                  kappa_from_t(t[3]), lambda_from_t(t[4]), a);
      };
      plan.report = [](const std::vector<double>& t) {
        return ParamMap{{"alpha", std::exp(t[0])},
                        {"beta", std::exp(t[1])},
                        {"mu", wrap_angle(t[2])},
                        {"kappa", reported_kappa(t[3])},
                        {"lambda", lambda_from_t(t[4])}};
      };
      plan.loglik_at = [&a](const ParamMap& p) {
        return loglik_weissvm_raw(p.at("alpha"), p.at("beta"), p.at("mu"),
                                  p.at("kappa"), p.at("lambda"), a);
      };
      auto pack = [](double alpha, double beta, double mu, double kappa,
                     double lambda) {
        return std::vector<double>{to_log(alpha), to_log(beta), mu,
                                   kappa_to_t(kappa), lambda_to_t(lambda)};
      };
      if (init)
        plan.starts.push_back(pack(init->at("alpha"), init->at("beta"),
                                   init->at("mu"), init->at("kappa"),
                                   init->at("lambda")));
      const MomInit mom = weissvm_mom_init(a);
      plan.starts.push_back(
          pack(mom.alpha, mom.beta, mom.mu, mom.kappa, mom.lambda));
      plan.starts.push_back(pack(1.0, mom.beta, mom.mu, mom.kappa, 0.0));
      plan.starts.push_back(pack(mom.alpha, mom.beta, mom.mu, mom.kappa,
                                 mom.lambda >= 0.0 ? 0.9 : -0.9));
      // Submodel optima as exact embedded starts.
      const FitResult jw = fit(Model::jw, data);
      plan.starts.push_back(pack(1.0, jw.estimates.at("beta"),
                                 jw.estimates.at("mu"),
                                 jw.estimates.at("kappa"), 0.0));
      const FitResult ind = fit(Model::indep, data);
      plan.starts.push_back(pack(ind.estimates.at("alpha"),
                                 ind.estimates.at("beta"),
                                 ind.estimates.at("mu"), 0.0,
                                 ind.estimates.at("lambda")));
      add_jitters(plan.starts, plan.starts[init ? 1 : 0], model);
      break;
    }
    case Model::ggssvm: {
      plan.objective = [&a](const std::vector<double>& t) {
        return loglik_ggssvm_raw(std::exp(t[0]), std::exp(t[1]),
                                 std::exp(t[2]), t[3], kappa_from_t(t[4]),
                                 lambda_from_t(t[5]), a);
      };
      plan.report = [](const std::vector<double>& t) {
        return ParamMap{{"alpha", std::exp(t[0])},
                        {"beta", std::exp(t[1])},
                        {"gamma", std::exp(t[2])},
                        {"mu", wrap_angle(t[3])},
                        {"kappa", reported_kappa(t[4])},
                        {"lambda", lambda_from_t(t[5])}};
      };
      plan.loglik_at = [&a](const ParamMap& p) {
        return loglik_ggssvm_raw(p.at("alpha"), p.at("beta"), p.at("gamma"),
                                 p.at("mu"), p.at("kappa"), p.at("lambda"), a);
      };
      auto pack = [](double alpha, double beta, double gamma, double mu,
                     double kappa, double lambda) {
        return std::vector<double>{to_log(alpha),     to_log(beta),
                                   to_log(gamma),     mu,
                                   kappa_to_t(kappa), lambda_to_t(lambda)};
      };
      if (init)
        plan.starts.push_back(pack(init->at("alpha"), init->at("beta"),
                                   init->at("gamma"), init->at("mu"),
                                   init->at("kappa"), init->at("lambda")));
      const MomInit mom = weissvm_mom_init(a);
      plan.starts.push_back(
          pack(mom.alpha, mom.beta, mom.alpha, mom.mu, mom.kappa, mom.lambda));
      const FitResult base = fit(Model::weissvm, data);
      plan.starts.push_back(pack(
          base.estimates.at("alpha"), base.estimates.at("beta"),
          base.estimates.at("alpha"), base.estimates.at("mu"),
          base.estimates.at("kappa"), base.estimates.at("lambda")));
      add_jitters(plan.starts, plan.starts[init ? 1 : 0], model);
      break;
    }
    case Model::jw: {
      plan.objective = [&a](const std::vector<double>& t) {
        return loglik_jw_raw(std::exp(t[0]), t[1], kappa_from_t(t[2]), a);
      };
      plan.report = [](const std::vector<double>& t) {
        return ParamMap{{"beta", std::exp(t[0])},
                        {"mu", wrap_angle(t[1])},
                        {"kappa", reported_kappa(t[2])}};
      };
      plan.loglik_at = [&a](const ParamMap& p) {
        return loglik_jw_raw(p.at("beta"), p.at("mu"), p.at("kappa"), a);
      };
      auto pack = [](double beta, double mu, double kappa) {
        return std::vector<double>{to_log(beta), mu, kappa_to_t(kappa)};
      };
      if (init)
        plan.starts.push_back(
            pack(init->at("beta"), init->at("mu"), init->at("kappa")));
      const MomInit mom = weissvm_mom_init(a);
      double mean_x = 0.0;
      for (double v : a.x) mean_x += v;
      mean_x /= static_cast<double>(a.n);
      plan.starts.push_back(pack(1.0 / mean_x, mom.mu, mom.kappa));
      add_jitters(plan.starts, plan.starts[init ? 1 : 0], model);
      break;
    }
    case Model::indep: {
      plan.objective = [&a](const std::vector<double>& t) {
        return loglik_indep_raw(std::exp(t[0]), std::exp(t[1]), t[2],
                                lambda_from_t(t[3]), a);
      };
      plan.report = [](const std::vector<double>& t) {
        return ParamMap{{"alpha", std::exp(t[0])},
                        {"beta", std::exp(t[1])},
                        {"mu", wrap_angle(t[2])},
                        {"lambda", lambda_from_t(t[3])}};
      };
      plan.loglik_at = [&a](const ParamMap& p) {
        return loglik_indep_raw(p.at("alpha"), p.at("beta"), p.at("mu"),
                                p.at("lambda"), a);
      };
      auto pack = [](double alpha, double beta, double mu, double lambda) {
        return std::vector<double>{to_log(alpha), to_log(beta), mu,
                                   lambda_to_t(lambda)};
      };
      if (init)
        plan.starts.push_back(pack(init->at("alpha"), init->at("beta"),
                                   init->at("mu"), init->at("lambda")));
      const MomInit mom = weissvm_mom_init(a);
      double mean_sin = 0.0;
      for (double t : a.theta) mean_sin += std::sin(t - mom.mu);
      mean_sin /= static_cast<double>(a.n);
      const double lambda0 = std::clamp(2.0 * mean_sin, -0.95, 0.95);
      plan.starts.push_back(pack(mom.alpha, mom.beta, mom.mu, lambda0));
      add_jitters(plan.starts, plan.starts[init ? 1 : 0], model);
      break;
    }
    case Model::ms:
    case Model::ks: {
      const bool is_ks = model == Model::ks;
      plan.objective = [&a, is_ks](const std::vector<double>& t) {
        return loglik_msks_raw(t[0], std::exp(t[1]), std::exp(t[2]), t[3],
                               t[4], is_ks ? t[5] : 0.0,
                               kappa_from_t(is_ks ? t[6] : t[5]),
                               is_ks ? kappa_from_t(t[7]) : 0.0, a);
      };
      plan.report = [is_ks](const std::vector<double>& t) {
        ParamMap p{{"mu_prime", t[0]},
                   {"sigma", std::exp(t[1])},
                   {"lambda", std::exp(t[2])},
                   {"nu", wrap_angle(t[3])},
                   {"mu1", wrap_angle(t[4])}};
        if (is_ks) {
          p["mu2"] = wrap_angle_half(t[5]);
          p["kappa1"] = reported_kappa(t[6]);
          p["kappa2"] = reported_kappa(t[7]);
        } else {
          p["kappa1"] = reported_kappa(t[5]);
        }
        return p;
      };
      plan.loglik_at = [&a, is_ks](const ParamMap& p) {
        return loglik_msks_raw(p.at("mu_prime"), p.at("sigma"), p.at("lambda"),
                               p.at("nu"), p.at("mu1"),
                               is_ks ? p.at("mu2") : 0.0, p.at("kappa1"),
                               is_ks ? p.at("kappa2") : 0.0, a);
      };
      auto pack = [is_ks](const MsksInit& v) {
        std::vector<double> t{v.mu_prime, to_log(v.sigma), to_log(v.lambda),
                              v.nu, v.mu1};
        if (is_ks) {
          t.push_back(v.mu2);
          t.push_back(kappa_to_t(v.kappa1));
          t.push_back(kappa_to_t(v.kappa2));
        } else {
          t.push_back(kappa_to_t(v.kappa1));
        }
        return t;
      };
      if (init) {
        MsksInit v{};
        v.mu_prime = init->at("mu_prime");
        v.sigma = init->at("sigma");
        v.lambda = init->at("lambda");
        v.nu = init->at("nu");
        v.mu1 = init->at("mu1");
        v.kappa1 = init->at("kappa1");
        v.mu2 = is_ks ? init->at("mu2") : 0.0;
        v.kappa2 = is_ks ? init->at("kappa2") : 0.0;
        plan.starts.push_back(pack(v));
      }
      plan.starts.push_back(pack(msks_init(a, is_ks)));
      if (is_ks) {
        const FitResult ms = fit(Model::ms, data);
        MsksInit v{};
        v.mu_prime = ms.estimates.at("mu_prime");
        v.sigma = ms.estimates.at("sigma");
        v.lambda = ms.estimates.at("lambda");
        v.nu = ms.estimates.at("nu");
        v.mu1 = ms.estimates.at("mu1");
        v.kappa1 = ms.estimates.at("kappa1");
        v.mu2 = 0.0;
        v.kappa2 = 0.0;
        plan.starts.push_back(pack(v));
      }
      add_jitters(plan.starts, plan.starts[init ? 1 : 0], model);
      break;
    }
  }
  return plan;
}

}  // namespace inference_detail

inline FitResult fit(Model model, const std::vector<CylObservation>& data,
                     const std::optional<ParamMap>& init) {
  using namespace inference_detail;
  const bool cylinder = model != Model::ms && model != Model::ks;
  const DataArrays arrays = make_arrays(data, cylinder);
  const Plan plan = make_plan(model, arrays, data, init);

  NelderMeadConfig config;
  NelderMeadResult best;
  bool have_best = false;
  int total_iterations = 0;
  for (const auto& start : plan.starts) {
    NelderMeadResult result;
    try {
      result = nelder_mead(plan.objective, start, config);
    } catch (const std::invalid_argument&) {
      continue;  // infeasible start
    }
    total_iterations += result.iterations;
    if (!have_best || result.value > best.value ||
        (result.value == best.value && result.converged && !best.converged)) {
      best = std::move(result);
      have_best = true;
    }
  }
  if (!have_best)
    throw std::runtime_error(
        "fit: no feasible starting point for the optimizer");

  FitResult out;
  out.model = model;
  out.estimates = plan.report(best.point);
  out.mll = plan.loglik_at(out.estimates);
  const int k = free_param_count(model);
  out.n = arrays.n;
  out.aic = 2.0 * k - 2.0 * out.mll;
  out.bic = k * std::log(static_cast<double>(arrays.n)) - 2.0 * out.mll;
  out.iterations = total_iterations;
  out.converged = best.converged;
  out.final_simplex_spread = best.simplex_spread;
  return out;
}

namespace inference_detail {

inline TestResult make_lr_result(FitResult null_fit, FitResult alt_fit,
                                 int dof) {
  TestResult result;
  result.statistic = std::max(0.0, -2.0 * (null_fit.mll - alt_fit.mll));
  result.dof = dof;
  result.p_value = chi_square_sf(result.statistic, dof);
  result.null_fit = std::move(null_fit);
  result.alt_fit = std::move(alt_fit);
  return result;
}

}  // namespace inference_detail

// Likelihood ratio test of the Johnson-Wehrly submodel (alpha = 1, lambda = 0)
// against the full five-parameter model; 2 degrees of freedom.
inline TestResult lr_test_jw(const std::vector<CylObservation>& data) {
  FitResult null_fit = fit(Model::jw, data);
  FitResult alt_fit = fit(Model::weissvm, data);
  return inference_detail::make_lr_result(std::move(null_fit),
                                          std::move(alt_fit), 2);
}

// Likelihood ratio test of circular-linear independence (kappa = 0) against
// the full model; 1 degree of freedom.
inline TestResult lr_test_indep(const std::vector<CylObservation>& data) {
  FitResult null_fit = fit(Model::indep, data);
  FitResult alt_fit = fit(Model::weissvm, data);
  return inference_detail::make_lr_result(std::move(null_fit),
                                          std::move(alt_fit), 1);
}

}  // namespace cylstats
