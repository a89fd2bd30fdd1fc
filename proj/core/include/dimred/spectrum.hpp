#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dimred/cmatrix.hpp"

namespace dimred::subspace {

// Bootstrap summaries attached to a Spectrum for reporting.  Eigenvalue
// intervals are reported both as min/max envelopes and as 2.5/97.5
// percentiles; subspace distances are against the full-sample subspace,
// summarized per candidate dimension n = 1..m-1.
struct BootstrapSummary {
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<double> lambda_min, lambda_max;  // per eigenvalue
  std::vector<double> lambda_lo, lambda_hi;    // 2.5% / 97.5%
  struct DistanceSummary {
    int n = 0;
    double min = 0.0, max = 0.0, lo = 0.0, hi = 0.0, mean = 0.0;
  };
  std::vector<DistanceSummary> distances;
};

// Descending eigenpairs of a C estimate.  Column i of eigenvectors pairs with
// eigenvalues[i]; each column's largest-magnitude component is positive
// (ties broken toward the lowest index).
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::optional<EstimatorInfo> info;
  std::optional<BootstrapSummary> bootstrap;

  int m() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum eigendecompose(const CMatrixEstimate& estimate);
Spectrum eigendecompose(const Eigen::MatrixXd& C);

struct ExplicitDimension {
  int n = 1;
};
struct LargestGap {
  int max_n = 0;  // 0 -> up to m-1
};
using SelectionStrategy = std::variant<ExplicitDimension, LargestGap>;

struct ActiveSubspace {
  int n = 0;
  Eigen::MatrixXd W1;  // m x n
  Eigen::MatrixXd W2;  // m x (m-n)
  std::string selection;  // "explicit" | "largest_gap"
  Eigen::VectorXd eigenvalues;  // full spectrum, for reporting
};

// Explicit n or the largest gap of the eigenvalue sequence in log10 scale,
// with everything below 1e-12 * lambda_1 clamped to that floor (treated as
// zero).  Ties pick the smallest n.
ActiveSubspace select_dimension(const Spectrum& spectrum,
                                const SelectionStrategy& strategy);

// Spectral norm of the difference of the orthogonal projectors; equals the
// sine of the largest principal angle.  Inputs must have orthonormal columns
// (Gram deviation from I beyond 1e-8 is rejected).
double subspace_distance(const Eigen::MatrixXd& W1a, const Eigen::MatrixXd& W1b);

// 4 * lambda_1 * delta / (lambda_n - lambda_{n+1}), n 1-based.
double gap_bound(const Eigen::VectorXd& lambda, int n, double delta);

// ceil(alpha * k * ln m) gradient samples for a k-dimensional subspace in m
// dimensions.
std::int64_t sample_count_heuristic(int k, int m, double alpha);

}  // namespace dimred::subspace
