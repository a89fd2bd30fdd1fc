#include "dimred/activity.hpp"

#include <cmath>
#include <limits>

#include "dimred/errors.hpp"
#include "dimred/gauss_legendre.hpp"

namespace dimred::subspace {

ActivityReport activity_identity_check(const models::ModelFunction& model,
                                       const Spectrum& spectrum, int n,
                                       int quadrature_order) {
  const int m = model.dim();
  if (spectrum.m() != m) {
    throw ArgumentError("activity check: spectrum dimension mismatch");
  }
  if (n < 1 || n > m) {
    throw ArgumentError("activity check: n must satisfy 1 <= n <= m");
  }
  if (quadrature_order < 1) {
    throw ArgumentError("activity check: quadrature order must be >= 1");
  }
  std::int64_t total = 1;
  for (int d = 0; d < m; ++d) {
    if (total > kQuadratureBudget / quadrature_order) {
      throw ArgumentError("activity check: quadrature budget exceeded");
    }
    total *= quadrature_order;
  }

  const GaussLegendreRule rule = gauss_legendre(quadrature_order);
  std::vector<double> prob_weights(rule.weights);
  for (double& w : prob_weights) w *= 0.5;

  const Eigen::MatrixXd W1 = spectrum.eigenvectors.leftCols(n);
  const Eigen::MatrixXd W2 = spectrum.eigenvectors.rightCols(m - n);

  std::vector<double> xi(m), g(m);
  Eigen::VectorXd gv(m);
  double active = 0.0, inactive = 0.0;
  for (std::int64_t i = 0; i < total; ++i) {
    double w = 1.0;
    std::int64_t rest = i;
    for (int d = 0; d < m; ++d) {
      const int node = static_cast<int>(rest % quadrature_order);
      rest /= quadrature_order;
      xi[d] = rule.nodes[node];
      w *= prob_weights[node];
    }
    model.gradient(xi, g);
    for (int d = 0; d < m; ++d) gv[d] = g[d];
    active += w * (W1.transpose() * gv).squaredNorm();
    if (m > n) inactive += w * (W2.transpose() * gv).squaredNorm();
  }

  ActivityReport report;
  report.n = n;
  report.quadrature_order = quadrature_order;
  report.active_integral = active;
  report.inactive_integral = inactive;
  for (int i = 0; i < n; ++i) report.active_sum += spectrum.eigenvalues[i];
  for (int i = n; i < m; ++i) report.inactive_sum += spectrum.eigenvalues[i];
  const double scale =
      std::max(spectrum.eigenvalues[0], std::numeric_limits<double>::min());
  report.active_residual = std::abs(report.active_sum - active) / scale;
  report.inactive_residual = std::abs(report.inactive_sum - inactive) / scale;
  return report;
}

}  // namespace dimred::subspace
