#include "dimred/spectrum.hpp"

#include <cmath>

#include "dimred/errors.hpp"

namespace dimred::subspace {
namespace {

void apply_sign_rule(Eigen::MatrixXd& W) {
  for (Eigen::Index j = 0; j < W.cols(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < W.rows(); ++i) {
      if (std::abs(W(i, j)) > std::abs(W(best, j))) best = i;
    }
    if (W(best, j) < 0.0) W.col(j) = -W.col(j);
  }
}

Spectrum decompose_symmetric(const Eigen::MatrixXd& C) {
  if (C.rows() != C.cols() || C.rows() < 1) {
    throw ArgumentError("eigendecompose: matrix must be square and nonempty");
  }
  const double scale = C.cwiseAbs().maxCoeff();
  const double asym = (C - C.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale && asym > 0.0) {
    throw ArgumentError("eigendecompose: input is not symmetric");
  }
  const Eigen::MatrixXd S = 0.5 * (C + C.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success) {
    throw NumericError(
        "eigendecompose: solver failed to converge (m=" +
        std::to_string(C.rows()) + ", max |entry|=" + std::to_string(scale) +
        ", trace=" + std::to_string(S.trace()) + ")");
  }

  const int m = static_cast<int>(C.rows());
  Spectrum spec;
  spec.eigenvalues.resize(m);
  spec.eigenvectors.resize(m, m);
  for (int i = 0; i < m; ++i) {  // solver returns ascending order
    spec.eigenvalues[i] = solver.eigenvalues()[m - 1 - i];
    spec.eigenvectors.col(i) = solver.eigenvectors().col(m - 1 - i);
  }
  apply_sign_rule(spec.eigenvectors);

  // Cheap invariant checks; failures indicate a broken solve, not bad input.
  const double ortho = (spec.eigenvectors.transpose() * spec.eigenvectors -
                        Eigen::MatrixXd::Identity(m, m))
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > 1e-12) {
    throw NumericError("eigendecompose: eigenvectors lost orthonormality (" +
                       std::to_string(ortho) + ")");
  }
  const double l1 = std::abs(spec.eigenvalues[0]);
  const double resid = (S * spec.eigenvectors -
                        spec.eigenvectors * spec.eigenvalues.asDiagonal())
                           .cwiseAbs()
                           .maxCoeff();
  if (resid > 1e-10 * l1 && resid > 1e-300) {
    throw NumericError("eigendecompose: residual C W - W Lambda too large (" +
                       std::to_string(resid) + ")");
  }
  return spec;
}

}  // namespace

Spectrum eigendecompose(const CMatrixEstimate& estimate) {
  Spectrum spec = decompose_symmetric(estimate.C);
  const double l1 = spec.eigenvalues[0];
  const double lmin = spec.eigenvalues[spec.m() - 1];
  if (lmin < -1e-12 * std::max(l1, 0.0) && lmin < 0.0) {
    throw NumericError(
        "eigendecompose: estimate is not positive semidefinite (min "
        "eigenvalue " + std::to_string(lmin) + ")");
  }
  spec.info = estimate.info;
  return spec;
}

Spectrum eigendecompose(const Eigen::MatrixXd& C) {
  return decompose_symmetric(C);
}

ActiveSubspace select_dimension(const Spectrum& spectrum,
                                const SelectionStrategy& strategy) {
  const int m = spectrum.m();
  ActiveSubspace sub;
  sub.eigenvalues = spectrum.eigenvalues;

  if (const auto* ex = std::get_if<ExplicitDimension>(&strategy)) {
    if (ex->n < 1 || ex->n >= m) {
      throw ArgumentError("select_dimension: explicit n must satisfy 1 <= n < m");
    }
    sub.n = ex->n;
    sub.selection = "explicit";
  } else {
    const auto& lg = std::get<LargestGap>(strategy);
    int max_n = lg.max_n == 0 ? m - 1 : lg.max_n;
    if (max_n < 1 || max_n >= m) {
      throw ArgumentError("select_dimension: max_n must satisfy 1 <= max_n < m");
    }
    const double l1 = spectrum.eigenvalues[0];
    if (!(l1 > 0.0)) {
      throw DomainError("select_dimension: no gap (spectrum is zero)");
    }
    // log10 gaps with everything below the relative floor treated as zero.
    const double floor_value = 1e-12 * l1;
    std::vector<double> logs(m);
    for (int i = 0; i < m; ++i) {
      logs[i] = std::log10(std::max(spectrum.eigenvalues[i], floor_value));
    }
    int best_n = 0;
    double best_gap = 0.0;
    for (int n = 1; n <= max_n; ++n) {
      const double gap = logs[n - 1] - logs[n];
      if (gap > best_gap) {
        best_gap = gap;
        best_n = n;
      }
    }
    if (best_n == 0) {
      throw DomainError("select_dimension: no gap (all eigenvalues equal)");
    }
    sub.n = best_n;
    sub.selection = "largest_gap";
  }

  sub.W1 = spectrum.eigenvectors.leftCols(sub.n);
  sub.W2 = spectrum.eigenvectors.rightCols(m - sub.n);
  return sub;
}

double subspace_distance(const Eigen::MatrixXd& W1a, const Eigen::MatrixXd& W1b) {
  if (W1a.rows() != W1b.rows() || W1a.cols() != W1b.cols()) {
    throw ArgumentError("subspace_distance: shape mismatch");
  }
  if (W1a.cols() < 1 || W1a.cols() > W1a.rows()) {
    throw ArgumentError("subspace_distance: need 1 <= n <= m columns");
  }
  const Eigen::Index n = W1a.cols();
  const auto check_ortho = [n](const Eigen::MatrixXd& W, const char* which) {
    const double dev = (W.transpose() * W - Eigen::MatrixXd::Identity(n, n))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > 1e-8) {
      throw ArgumentError(std::string("subspace_distance: ") + which +
                          " columns are not orthonormal (deviation " +
                          std::to_string(dev) + ")");
    }
  };
  check_ortho(W1a, "first");
  check_ortho(W1b, "second");

  const Eigen::MatrixXd diff =
      W1a * W1a.transpose() - W1b * W1b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(diff);
  if (solver.info() != Eigen::Success) {
    throw NumericError("subspace_distance: eigensolve failed");
  }
  const double d = solver.eigenvalues().cwiseAbs().maxCoeff();
  return std::min(d, 1.0);
}

double gap_bound(const Eigen::VectorXd& lambda, int n, double delta) {
  const int m = static_cast<int>(lambda.size());
  if (n < 1 || n >= m) {
    throw ArgumentError("gap_bound: n must satisfy 1 <= n < m");
  }
  if (delta < 0.0) throw ArgumentError("gap_bound: delta must be >= 0");
  const double gap = lambda[n - 1] - lambda[n];
  if (!(gap > 0.0)) {
    throw DomainError("gap_bound: zero gap between lambda_n and lambda_{n+1}");
  }
  return 4.0 * lambda[0] * delta / gap;
}

std::int64_t sample_count_heuristic(int k, int m, double alpha) {
  if (k < 1) throw ArgumentError("sample_count_heuristic: k must be >= 1");
  if (m < 2) throw ArgumentError("sample_count_heuristic: m must be >= 2");
  if (!(alpha > 0.0)) {
    throw ArgumentError("sample_count_heuristic: alpha must be positive");
  }
  return static_cast<std::int64_t>(
      std::ceil(alpha * static_cast<double>(k) * std::log(static_cast<double>(m))));
}

}  // namespace dimred::subspace
