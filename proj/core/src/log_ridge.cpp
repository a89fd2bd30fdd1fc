#include "dimred/log_ridge.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dimred/errors.hpp"

namespace dimred::diagnostics {

LogRidgeMatrix log_ridge_matrix(const units::PiGroupSet& pi) {
  const int m = pi.dm.m();
  const int n = pi.n();
  ratlin::Matrix v(m, 1);
  for (int i = 0; i < m; ++i) v(i, 0) = pi.v[static_cast<size_t>(i)];
  LogRidgeMatrix lrm;
  lrm.A = ratlin::Matrix::hcat(v, pi.U);
  lrm.input_names = pi.dm.input_names;
  lrm.predicted_max_dim = n + 1;

  // The factors come straight from the construction; re-verify exactly so a
  // corrupted PiGroupSet cannot slip through.
  const units::VerifyReport audit = verify_pi_groups(pi);
  if (!audit.ok()) {
    throw NumericError("log_ridge_matrix: pi-group factors failed their "
                       "exact audit; internal inconsistency");
  }
  if (ratlin::rank(lrm.A) != n + 1) {
    throw NumericError("log_ridge_matrix: A = [v U] lost column rank; "
                       "internal inconsistency");
  }
  return lrm;
}

RestrictedLogRidge restrict_rows(const LogRidgeMatrix& lrm,
                                 const std::vector<std::string>& varied) {
  if (varied.empty()) {
    throw ArgumentError("restrict_rows: varied parameter list is empty");
  }
  RestrictedLogRidge out;
  out.varied = varied;
  out.A = ratlin::Matrix(static_cast<int>(varied.size()), lrm.A.cols());
  for (int r = 0; r < static_cast<int>(varied.size()); ++r) {
    const auto it = std::find(lrm.input_names.begin(), lrm.input_names.end(),
                              varied[static_cast<size_t>(r)]);
    if (it == lrm.input_names.end()) {
      throw ArgumentError("restrict_rows: '" + varied[static_cast<size_t>(r)] +
                          "' is not a quantity-system input");
    }
    const int src = static_cast<int>(it - lrm.input_names.begin());
    for (int c = 0; c < lrm.A.cols(); ++c) out.A(r, c) = lrm.A(src, c);
  }
  out.rank = ratlin::rank(out.A);
  return out;
}

ConsistencyReport consistency_check(const subspace::Spectrum& spectrum,
                                    const models::ParameterSpace& space,
                                    const RestrictedLogRidge& restricted,
                                    double zero_tol) {
  const int m = spectrum.m();
  if (space.m() != m || restricted.A.rows() != m) {
    throw ArgumentError("consistency_check: spectrum, space, and restricted "
                        "matrix must agree on the parameter count");
  }
  if (!(zero_tol > 0.0)) {
    throw ArgumentError("consistency_check: zero_tol must be positive");
  }

  ConsistencyReport report;
  report.zero_tol = zero_tol;
  report.restricted_rank = restricted.rank;

  const double l1 = spectrum.eigenvalues[0];
  for (int i = 0; i < m; ++i) {
    if (spectrum.eigenvalues[i] > zero_tol * l1) ++report.nonzero_count;
  }
  report.count_ok = report.nonzero_count <= restricted.rank;

  // Containment of the top-k eigenspace in col(A_restricted), both expressed
  // in log coordinates.  C lives in normalized coordinates, so eigenvector
  // component i is divided by (log_u_i - log_l_i)/2 before comparing.
  report.k = report.nonzero_count;
  if (report.k == 0) {
    report.containment_distance = 0.0;
    report.containment_ok = true;
    return report;
  }

  Eigen::MatrixXd V(m, report.k);
  for (int j = 0; j < report.k; ++j) {
    for (int i = 0; i < m; ++i) {
      V(i, j) = spectrum.eigenvectors(i, j) / space.log_halfwidth(i);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> vqr(V);
  const Eigen::MatrixXd W_log =
      vqr.householderQ() * Eigen::MatrixXd::Identity(m, report.k);

  Eigen::MatrixXd A(m, restricted.A.cols());
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < restricted.A.cols(); ++c) {
      A(i, c) = restricted.A(i, c).get_d();
    }
  }
  // Column pivoting puts rank(A) independent directions first; the exact
  // rational rank says how many columns of Q to keep.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> aqr(A);
  const Eigen::MatrixXd Q_A =
      aqr.householderQ() * Eigen::MatrixXd::Identity(m, restricted.rank);

  const Eigen::MatrixXd projected = Q_A * (Q_A.transpose() * W_log);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pqr(projected);
  if (pqr.rank() < report.k) {
    // Part of the eigenspace is orthogonal to col(A): maximal distance.
    report.containment_distance = 1.0;
    report.containment_ok = false;
    return report;
  }
  const Eigen::MatrixXd W_proj =
      pqr.householderQ() * Eigen::MatrixXd::Identity(m, report.k);
  report.containment_distance = subspace::subspace_distance(W_log, W_proj);
  report.containment_ok = report.containment_distance < 1e-6;
  return report;
}

}  // namespace dimred::diagnostics
