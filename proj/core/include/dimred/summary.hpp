#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimred/cmatrix.hpp"
#include "dimred/model.hpp"
#include "dimred/spectrum.hpp"

namespace dimred::diagnostics {

// Rows for a 1-D or 2-D summary plot: active variables, output value, and the
// points they came from (normalized and physical).
struct SummaryRow {
  double y1 = 0.0;
  double y2 = 0.0;  // unused when n == 1
  double f = 0.0;
  std::vector<double> xi;
  std::vector<double> x_physical;
};

struct SummaryData {
  int n = 0;  // 1 or 2
  std::vector<SummaryRow> rows;
  std::vector<std::string> param_names;
  std::string provenance;
};

// Fresh seeded draws (stream kSummary).
SummaryData summary_1d(const models::ModelFunction& model,
                       const subspace::ActiveSubspace& sub, int count,
                       std::uint64_t seed);
SummaryData summary_2d(const models::ModelFunction& model,
                       const subspace::ActiveSubspace& sub, int count,
                       std::uint64_t seed);

// Re-use of already evaluated samples; count <= 0 means all rows.
SummaryData summary_1d(const subspace::GradientSampleSet& samples,
                       const subspace::ActiveSubspace& sub, int count = 0);
SummaryData summary_2d(const subspace::GradientSampleSet& samples,
                       const subspace::ActiveSubspace& sub, int count = 0);

// Activity scores s_i = sum_{j<=n} lambda_j w_ij^2, max-normalized, plus the
// signed first-eigenvector components.
struct SensitivityReport {
  int n = 0;
  std::vector<double> scores;      // normalized so the max is 1
  std::vector<double> raw_scores;  // before normalization
  std::vector<double> first_eigenvector;
};

SensitivityReport eigenvector_sensitivities(const subspace::Spectrum& spectrum,
                                            int n);

// Least-squares polynomial fit of f on the active variables (tensor basis for
// n = 2) over seeded training draws, scored on held-out test draws.
struct RidgeFitResult {
  int n = 0;
  int degree = 0;
  std::int64_t train_count = 0;
  std::int64_t test_count = 0;
  double train_rel_rms = 0.0;  // train RMS / spread(train f)
  double test_rel_rms = 0.0;   // test RMS / spread(test f)
};

RidgeFitResult ridge_residual(const models::ModelFunction& model,
                              const subspace::ActiveSubspace& sub,
                              int fit_degree, std::int64_t train_count,
                              std::int64_t test_count, std::uint64_t seed);

}  // namespace dimred::diagnostics
