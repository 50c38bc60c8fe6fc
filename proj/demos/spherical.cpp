// The sphere-linear extension: densities on S^{k-1} x [0, inf) for k >= 2,
// and the way the planar case folds back onto the cylindrical model.

#include <cmath>
#include <cstdio>
#include <vector>

#include "cylstats/cylstats.hpp"

using namespace cylstats;

int main() {
  // directions on the 2-sphere, linear part along the pole
  const SphereParams p({0.0, 0.0, 1.0},   // modal direction
                       {1.0, 0.0, 0.0},   // skew direction, orthogonal unit
                       1.5, 0.8, 2.0);    // alpha, beta, kappa

  std::printf("normalizing constant on S^2: %.6e\n", weissfvml_norm_const(p));
  std::printf("closed form alpha beta^alpha tanh(kappa) / (4 pi kappa): "
              "%.6e\n\n",
              p.alpha * std::pow(p.beta, p.alpha) * std::tanh(p.kappa) /
                  (4.0 * pi * p.kappa));

  std::printf("log-density along a quarter great circle at x = 1.2:\n");
  for (double colat : {0.0, 0.5, 1.0, 1.5}) {
    const std::vector<double> u = {std::sin(colat), 0.0, std::cos(colat)};
    std::printf("  colatitude %.1f: %9.4f\n", colat,
                weissfvml_logpdf(p, u, 1.2));
  }

  // k = 2: unit vectors on the circle reproduce the cylindrical density
  // with planar skewness sin(a - mu0)
  const double mu0 = 0.4, skew_angle = mu0 + pi / 2.0;
  const SphereParams planar({std::cos(mu0), std::sin(mu0)},
                            {std::cos(skew_angle), std::sin(skew_angle)},
                            2.0, 1.0, 1.5);
  const WeiSSVMParams cyl(2.0, 1.0, mu0, 1.5, std::sin(skew_angle - mu0));
  std::printf("\nplanar reduction (k = 2) against the cylindrical form:\n");
  for (double theta : {-1.0, 0.4, 2.5}) {
    const double on_circle = weissfvml_logpdf(
        planar, {std::cos(theta), std::sin(theta)}, 0.9);
    const double on_cylinder = weissvm_logpdf(cyl, {theta, 0.9});
    std::printf("  theta %+.1f: sphere %9.6f  cylinder %9.6f\n", theta,
                on_circle, on_cylinder);
  }
  return 0;
}
