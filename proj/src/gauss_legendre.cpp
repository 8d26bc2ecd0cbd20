#include "rifs/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "rifs/errors.hpp"

namespace rifs {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw ConfigurationError("Gauss-Legendre rule needs at least one node");
  nodes_.resize(n);
  weights_.resize(n);
  // Newton on P_n from the Chebyshev-like initial guesses; roots are symmetric.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

}  // namespace rifs
