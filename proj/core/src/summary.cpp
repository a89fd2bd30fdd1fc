#include "dimred/summary.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "dimred/errors.hpp"
#include "dimred/rng.hpp"

namespace dimred::diagnostics {
namespace {

SummaryData summary_from_model(const models::ModelFunction& model,
                               const subspace::ActiveSubspace& sub, int count,
                               std::uint64_t seed, int values) {
  if (sub.n < values) {
    throw ArgumentError("summary: subspace has n = " + std::to_string(sub.n) +
                        " but " + std::to_string(values) +
                        " active variables were requested");
  }
  if (count < 1) throw ArgumentError("summary: count must be >= 1");
  const int m = model.dim();
  if (static_cast<int>(sub.W1.rows()) != m) {
    throw ArgumentError("summary: subspace dimension mismatch");
  }
  const CounterRng rng(seed, streams::kSummary);
  SummaryData data;
  data.n = values;
  data.param_names = model.space().names();
  data.provenance = "internal: model=" + model.name() +
                    " count=" + std::to_string(count) +
                    " seed=" + std::to_string(seed);
  data.rows.resize(static_cast<size_t>(count));
  std::vector<double> xi(m);
  for (int p = 0; p < count; ++p) {
    const std::uint64_t base =
        static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(m);
    for (int d = 0; d < m; ++d) xi[d] = rng.uniform_sym(base + d);
    auto& row = data.rows[static_cast<size_t>(p)];
    row.xi = xi;
    row.x_physical = model.space().physical_from_normalized(xi);
    row.f = model.value(xi);
    double y1 = 0.0, y2 = 0.0;
    for (int d = 0; d < m; ++d) {
      y1 += sub.W1(d, 0) * xi[d];
      if (values > 1) y2 += sub.W1(d, 1) * xi[d];
    }
    row.y1 = y1;
    row.y2 = y2;
  }
  return data;
}

SummaryData summary_from_samples(const subspace::GradientSampleSet& samples,
                                 const subspace::ActiveSubspace& sub, int count,
                                 int values) {
  if (sub.n < values) {
    throw ArgumentError("summary: subspace has n = " + std::to_string(sub.n) +
                        " but " + std::to_string(values) +
                        " active variables were requested");
  }
  if (samples.size() < 1) throw ArgumentError("summary: sample set is empty");
  const int m = samples.m();
  if (static_cast<int>(sub.W1.rows()) != m) {
    throw ArgumentError("summary: subspace dimension mismatch");
  }
  std::int64_t rows = samples.size();
  if (count > 0 && count < rows) rows = count;
  SummaryData data;
  data.n = values;
  data.param_names = samples.param_names;
  data.provenance = "samples: " + samples.provenance;
  data.rows.resize(static_cast<size_t>(rows));
  for (std::int64_t p = 0; p < rows; ++p) {
    const auto& rec = samples.records[static_cast<size_t>(p)];
    auto& row = data.rows[static_cast<size_t>(p)];
    row.xi = rec.xi;
    row.x_physical = rec.x_physical;
    row.f = rec.f;
    double y1 = 0.0, y2 = 0.0;
    for (int d = 0; d < m; ++d) {
      y1 += sub.W1(d, 0) * rec.xi[d];
      if (values > 1) y2 += sub.W1(d, 1) * rec.xi[d];
    }
    row.y1 = y1;
    row.y2 = y2;
  }
  return data;
}

// Tensor polynomial basis in the active variables, scaled to improve
// conditioning; the scaling does not change the fitted polynomial space.
Eigen::MatrixXd design_matrix(const std::vector<std::array<double, 2>>& y,
                              int n, int degree,
                              const std::array<double, 2>& scale) {
  const std::int64_t rows = static_cast<std::int64_t>(y.size());
  const int cols = n == 1 ? degree + 1 : (degree + 1) * (degree + 1);
  Eigen::MatrixXd X(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    const double t1 = y[static_cast<size_t>(i)][0] / scale[0];
    if (n == 1) {
      double p = 1.0;
      for (int a = 0; a <= degree; ++a) {
        X(i, a) = p;
        p *= t1;
      }
    } else {
      const double t2 = y[static_cast<size_t>(i)][1] / scale[1];
      double p1 = 1.0;
      for (int a = 0; a <= degree; ++a) {
        double p2 = 1.0;
        for (int b = 0; b <= degree; ++b) {
          X(i, a * (degree + 1) + b) = p1 * p2;
          p2 *= t2;
        }
        p1 *= t1;
      }
    }
  }
  return X;
}

double spread(const Eigen::VectorXd& f) {
  return f.maxCoeff() - f.minCoeff();
}

}  // namespace

SummaryData summary_1d(const models::ModelFunction& model,
                       const subspace::ActiveSubspace& sub, int count,
                       std::uint64_t seed) {
  return summary_from_model(model, sub, count, seed, 1);
}

SummaryData summary_2d(const models::ModelFunction& model,
                       const subspace::ActiveSubspace& sub, int count,
                       std::uint64_t seed) {
  return summary_from_model(model, sub, count, seed, 2);
}

SummaryData summary_1d(const subspace::GradientSampleSet& samples,
                       const subspace::ActiveSubspace& sub, int count) {
  return summary_from_samples(samples, sub, count, 1);
}

SummaryData summary_2d(const subspace::GradientSampleSet& samples,
                       const subspace::ActiveSubspace& sub, int count) {
  return summary_from_samples(samples, sub, count, 2);
}

SensitivityReport eigenvector_sensitivities(const subspace::Spectrum& spectrum,
                                            int n) {
  const int m = spectrum.m();
  if (n < 1 || n > m) {
    throw ArgumentError("sensitivities: n must satisfy 1 <= n <= m");
  }
  SensitivityReport report;
  report.n = n;
  report.raw_scores.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = spectrum.eigenvectors(i, j);
      report.raw_scores[i] += spectrum.eigenvalues[j] * w * w;
    }
  }
  report.scores = report.raw_scores;
  double top = 0.0;
  for (double s : report.scores) top = std::max(top, s);
  if (top > 0.0) {
    for (double& s : report.scores) s /= top;
  }
  report.first_eigenvector.resize(m);
  for (int i = 0; i < m; ++i) {
    report.first_eigenvector[i] = spectrum.eigenvectors(i, 0);
  }
  return report;
}

RidgeFitResult ridge_residual(const models::ModelFunction& model,
                              const subspace::ActiveSubspace& sub,
                              int fit_degree, std::int64_t train_count,
                              std::int64_t test_count, std::uint64_t seed) {
  const int n = sub.n;
  if (n != 1 && n != 2) {
    throw ArgumentError("ridge fit: only n = 1 or 2 supported");
  }
  if (fit_degree < 1) throw ArgumentError("ridge fit: degree must be >= 1");
  const int cols = n == 1 ? fit_degree + 1 : (fit_degree + 1) * (fit_degree + 1);
  if (train_count < cols) {
    throw ArgumentError("ridge fit: need at least " + std::to_string(cols) +
                        " training points for degree " +
                        std::to_string(fit_degree));
  }
  if (test_count < 2) throw ArgumentError("ridge fit: need >= 2 test points");
  const int m = model.dim();

  const auto draw = [&](std::uint64_t stream, std::int64_t count,
                        std::vector<std::array<double, 2>>& y,
                        Eigen::VectorXd& f) {
    const CounterRng rng(seed, stream);
    std::vector<double> xi(m);
    y.resize(static_cast<size_t>(count));
    f.resize(count);
    for (std::int64_t p = 0; p < count; ++p) {
      const std::uint64_t base =
          static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(m);
      for (int d = 0; d < m; ++d) xi[d] = rng.uniform_sym(base + d);
      double y1 = 0.0, y2 = 0.0;
      for (int d = 0; d < m; ++d) {
        y1 += sub.W1(d, 0) * xi[d];
        if (n > 1) y2 += sub.W1(d, 1) * xi[d];
      }
      y[static_cast<size_t>(p)] = {y1, y2};
      f[p] = model.value(xi);
    }
  };

  std::vector<std::array<double, 2>> y_train, y_test;
  Eigen::VectorXd f_train, f_test;
  draw(streams::kRidgeFitTrain, train_count, y_train, f_train);
  draw(streams::kRidgeFitTest, test_count, y_test, f_test);

  std::array<double, 2> scale = {0.0, 0.0};
  for (const auto& p : y_train) {
    scale[0] = std::max(scale[0], std::abs(p[0]));
    scale[1] = std::max(scale[1], std::abs(p[1]));
  }
  if (scale[0] == 0.0) scale[0] = 1.0;
  if (scale[1] == 0.0) scale[1] = 1.0;

  const Eigen::MatrixXd X = design_matrix(y_train, n, fit_degree, scale);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < cols) {
    throw NumericError(
        "ridge fit: ill-conditioned design matrix (rank " +
        std::to_string(qr.rank()) + " of " + std::to_string(cols) +
        "); try a lower degree");
  }
  const Eigen::VectorXd coef = qr.solve(f_train);

  const auto rel_rms = [&](const std::vector<std::array<double, 2>>& y,
                           const Eigen::VectorXd& f) {
    const Eigen::MatrixXd Xe = design_matrix(y, n, fit_degree, scale);
    const Eigen::VectorXd resid = Xe * coef - f;
    const double rms =
        std::sqrt(resid.squaredNorm() / static_cast<double>(f.size()));
    const double s = spread(f);
    return s > 0.0 ? rms / s : rms;
  };

  RidgeFitResult result;
  result.n = n;
  result.degree = fit_degree;
  result.train_count = train_count;
  result.test_count = test_count;
  result.train_rel_rms = rel_rms(y_train, f_train);
  result.test_rel_rms = rel_rms(y_test, f_test);
  return result;
}

}  // namespace dimred::diagnostics
