#include "dimred/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "dimred/errors.hpp"

namespace dimred::subspace {

// Newton iteration on P_n with the three-term recurrence; standard
// Chebyshev-based initial guesses converge in a handful of steps.
GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("gauss_legendre: order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // P_n' from P_n and P_{n-1}
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Largest initial guess corresponds to the largest node; store ascending.
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact midpoint for odd orders
  return rule;
}

}  // namespace dimred::subspace
