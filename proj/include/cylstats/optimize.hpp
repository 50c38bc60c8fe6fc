#pragma once

// Derivative-free maximization with the Nelder-Mead simplex: reflection 1,
// expansion 2, contraction 1/2, shrink 1/2, plus one restart from the
// incumbent best point with a fresh simplex.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cylstats {

struct NelderMeadConfig {
  double value_tol = 1e-10;   // stop when best-to-worst value spread is below
  double size_tol = 1e-9;     // or when the simplex diameter is below
  int max_iterations = 5000;  // per restart
  int restarts = 1;           // fresh simplexes after the first run
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  double simplex_spread = std::numeric_limits<double>::infinity();
};

namespace optimize_detail {

using Objective = std::function<double(const std::vector<double>&)>;

struct Vertex {
  std::vector<double> x;
  double value;
};

inline double simplex_diameter(const std::vector<Vertex>& simplex) {
  double diameter = 0.0;
  for (std::size_t v = 1; v < simplex.size(); ++v)
    for (std::size_t i = 0; i < simplex[0].x.size(); ++i)
      diameter = std::max(diameter,
                          std::abs(simplex[v].x[i] - simplex[0].x[i]));
  return diameter;
}

// One Nelder-Mead run (maximization) from a given starting simplex.
inline NelderMeadResult run_simplex(const Objective& objective,
                                    std::vector<Vertex> simplex,
                                    const NelderMeadConfig& config) {
  const std::size_t dim = simplex[0].x.size();
  auto by_value_desc = [](const Vertex& a, const Vertex& b) {
    return a.value > b.value;
  };
  std::sort(simplex.begin(), simplex.end(), by_value_desc);

  NelderMeadResult result;
  int iteration = 0;
  for (; iteration < config.max_iterations; ++iteration) {
    const double spread = simplex.front().value - simplex.back().value;
    if (spread < config.value_tol || simplex_diameter(simplex) < config.size_tol) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i];
    for (double& c : centroid) c /= static_cast<double>(dim);

    Vertex& worst = simplex.back();
    auto blend = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i)
        x[i] = centroid[i] + t * (worst.x[i] - centroid[i]);
      return x;
    };

    std::vector<double> reflected = blend(-1.0);
    const double reflected_value = objective(reflected);
    if (reflected_value > simplex.front().value) {
      std::vector<double> expanded = blend(-2.0);
      const double expanded_value = objective(expanded);
      if (expanded_value > reflected_value)
        worst = {std::move(expanded), expanded_value};
      else
        worst = {std::move(reflected), reflected_value};
    } else if (reflected_value > simplex[simplex.size() - 2].value) {
      worst = {std::move(reflected), reflected_value};
    } else {
      const bool outside = reflected_value > worst.value;
      std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
      const double contracted_value = objective(contracted);
      if (contracted_value > (outside ? reflected_value : worst.value)) {
        worst = {std::move(contracted), contracted_value};
      } else {
        // Shrink toward the best vertex.
        for (std::size_t v = 1; v < simplex.size(); ++v) {
          for (std::size_t i = 0; i < dim; ++i)
            simplex[v].x[i] =
                0.5 * (simplex[v].x[i] + simplex.front().x[i]);
          simplex[v].value = objective(simplex[v].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_value_desc);
  }

  result.point = simplex.front().x;
  result.value = simplex.front().value;
  result.iterations = iteration;
  result.simplex_spread = simplex.front().value - simplex.back().value;
  return result;
}

inline std::vector<Vertex> build_simplex(const Objective& objective,
                                         const std::vector<double>& origin,
                                         double step) {
  std::vector<Vertex> simplex;
  simplex.reserve(origin.size() + 1);
  simplex.push_back({origin, objective(origin)});
  for (std::size_t i = 0; i < origin.size(); ++i) {
    std::vector<double> x = origin;
    x[i] += step * std::max(1.0, std::abs(x[i]));
    simplex.push_back({std::move(x), 0.0});
    simplex.back().value = objective(simplex.back().x);
  }
  return simplex;
}

}  // namespace optimize_detail

// Maximizes the objective from the given starting point.  The objective may
// return -inf inside infeasible regions, but must be finite at the start.
inline NelderMeadResult nelder_mead(
    const optimize_detail::Objective& objective, std::vector<double> initial,
    const NelderMeadConfig& config = {}) {
  if (initial.empty())
    throw std::invalid_argument("nelder_mead: initial point is empty");
  for (double v : initial)
    if (!std::isfinite(v))
      throw std::invalid_argument("nelder_mead: initial point is not finite");
  if (!std::isfinite(objective(initial)))
    throw std::invalid_argument(
        "nelder_mead: objective is not finite at the initial point");

  using namespace optimize_detail;
  NelderMeadResult best;
  std::vector<double> origin = std::move(initial);
  int total_iterations = 0;
  for (int round = 0; round <= config.restarts; ++round) {
    auto simplex = build_simplex(objective, origin, config.initial_step);
    NelderMeadResult result = run_simplex(objective, std::move(simplex), config);
    total_iterations += result.iterations;
    if (round == 0 || result.value > best.value ||
        (result.value == best.value && result.converged)) {
      best = std::move(result);
    }
    origin = best.point;
  }
  best.iterations = total_iterations;
  return best;
}

}  // namespace cylstats
