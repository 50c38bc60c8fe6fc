#pragma once

// Adaptive one-dimensional quadrature built on the Gauss-Kronrod 7-15 pair.
// Panels whose error estimate exceeds their share of the tolerance are
// bisected until the budget is met or the subdivision cap is reached.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cylstats {

// Thrown when an iterative numeric procedure fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Generous cap: the circular moment integrands develop an O(e^{-2 kappa})
  // wide spike, and resolving it near kappa = 6 takes a few hundred panels.
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
      throw std::invalid_argument("QuadratureConfig: abs_tol must be positive");
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
      throw std::invalid_argument("QuadratureConfig: rel_tol must be positive");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
  }
};

namespace quadrature_detail {

// QUADPACK dqk15 abscissae and weights; positive half, symmetric rule.
inline constexpr double kronrod_nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kronrod_weights[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
// Gauss-7 weights, matching kronrod_nodes[1], [3], [5], [7].
inline constexpr double gauss_weights[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct PanelEstimate {
  double integral;
  double error;
};

template <typename F>
PanelEstimate gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kronrod_weights[7] * f(center);
  double gauss = gauss_weights[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[i] * pair;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
  }
  return {kronrod * half, std::abs(kronrod - gauss) * half};
}

}  // namespace quadrature_detail

// Integrates f over the finite interval [a, b].  The integrand is only
// evaluated at interior points, so integrable endpoint singularities are
// tolerated as long as the panel estimates settle.  Throws ConvergenceError
// when the subdivision cap is hit before the tolerance is met.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureConfig& config = {}) {
  config.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate: endpoints must be finite");
  if (a == b) return 0.0;

  using quadrature_detail::gauss_kronrod_15;

  struct Panel {
    double a, b, integral, error;
  };

  const double width = std::abs(b - a);
  auto first = gauss_kronrod_15(f, a, b);
  std::vector<Panel> active{{a, b, first.integral, first.error}};
  std::vector<Panel> settled;
  double total = first.integral;
  int subdivisions = 0;

  while (!active.empty()) {
    Panel panel = active.back();
    active.pop_back();
    const double budget =
        std::max(config.abs_tol, config.rel_tol * std::abs(total)) *
        (std::abs(panel.b - panel.a) / width);
    if (panel.error <= budget || !std::isfinite(panel.error)) {
      settled.push_back(panel);
      continue;
    }
    if (++subdivisions > config.max_subdivisions)
      throw ConvergenceError(
          "integrate: subdivision limit reached before tolerance was met");
    const double mid = 0.5 * (panel.a + panel.b);
    auto left = gauss_kronrod_15(f, panel.a, mid);
    auto right = gauss_kronrod_15(f, mid, panel.b);
    total += left.integral + right.integral - panel.integral;
    active.push_back({panel.a, mid, left.integral, left.error});
    active.push_back({mid, panel.b, right.integral, right.error});
  }

  double sum = 0.0;
  for (const Panel& panel : settled) sum += panel.integral;
  if (!std::isfinite(sum))
    throw ConvergenceError("integrate: integral estimate is not finite");
  return sum;
}

// Integrates f over [a, infinity) through the substitution
// x = a + scale * u / (1 - u), u in [0, 1).  The integrand must decay fast
// enough that the transformed integrand vanishes as u -> 1; choosing scale
// near the natural width of f improves conditioning.
template <typename F>
double integrate_semi_infinite(F&& f, double a,
                               const QuadratureConfig& config = {},
                               double scale = 1.0) {
  if (!std::isfinite(a))
    throw std::invalid_argument("integrate_semi_infinite: lower endpoint must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("integrate_semi_infinite: scale must be positive");
  auto transformed = [&f, a, scale](double u) {
    const double inv = 1.0 / (1.0 - u);
    const double x = a + scale * u * inv;
    const double value = f(x) * scale * inv * inv;
    return std::isfinite(value) ? value : 0.0;
  };
  return integrate(transformed, 0.0, 1.0, config);
}

}  // namespace cylstats
