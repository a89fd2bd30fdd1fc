#pragma once

#include <string>
#include <vector>

#include "dimred/parameter_space.hpp"
#include "dimred/ratlin.hpp"
#include "dimred/spectrum.hpp"
#include "dimred/units.hpp"

namespace dimred::diagnostics {

// A = [v | u_1 ... u_n] over the quantity-system inputs.  Taking logs of the
// unitless physical law shows f is a ridge function of A^T log x, so rank(A)
// = n + 1 bounds the number of directions the output can depend on.
struct LogRidgeMatrix {
  ratlin::Matrix A;  // m x (n+1), exact rationals
  std::vector<std::string> input_names;
  int predicted_max_dim = 0;  // n + 1
};

// Assembles and exactly re-verifies A: first column solves D v = u, the rest
// span null(D), and A has full column rank.
LogRidgeMatrix log_ridge_matrix(const units::PiGroupSet& pi);

// A with rows restricted to the varied parameters (fixed inputs dropped), in
// the order given; the rank is recomputed exactly on the rationals.  Each
// varied name must match a quantity-system input.
struct RestrictedLogRidge {
  ratlin::Matrix A;  // |varied| x (n+1)
  std::vector<std::string> varied;
  int rank = 0;
};

RestrictedLogRidge restrict_rows(const LogRidgeMatrix& lrm,
                                 const std::vector<std::string>& varied);

// Dimensional-analysis / active-subspace cross-check: (i) the number of
// numerically nonzero eigenvalues must not exceed rank(A_restricted); (ii)
// the top-k eigenspace, mapped from normalized back to log coordinates, must
// lie inside col(A_restricted).  Row i of the restricted matrix corresponds
// to parameter i of the spectrum's space.
struct ConsistencyReport {
  double zero_tol = 0.0;
  int nonzero_count = 0;
  int restricted_rank = 0;
  bool count_ok = false;
  int k = 0;  // numerical rank used for the containment test
  double containment_distance = 0.0;
  bool containment_ok = false;

  bool ok() const { return count_ok && containment_ok; }
};

ConsistencyReport consistency_check(const subspace::Spectrum& spectrum,
                                    const models::ParameterSpace& space,
                                    const RestrictedLogRidge& restricted,
                                    double zero_tol = 1e-10);

}  // namespace dimred::diagnostics
