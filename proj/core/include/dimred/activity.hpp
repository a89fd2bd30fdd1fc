#pragma once

#include "dimred/model.hpp"
#include "dimred/spectrum.hpp"

namespace dimred::subspace {

// Quadrature check of the mean-square directional-derivative identity: the
// integrals of |W1^T grad f|^2 and |W2^T grad f|^2 against the uniform
// density must equal the leading and trailing eigenvalue sums.
struct ActivityReport {
  int n = 0;
  int quadrature_order = 0;
  double active_integral = 0.0;
  double inactive_integral = 0.0;
  double active_sum = 0.0;    // sum of the first n eigenvalues
  double inactive_sum = 0.0;  // sum of the rest
  double active_residual = 0.0;    // |active_sum - active_integral| / lambda_1
  double inactive_residual = 0.0;
};

ActivityReport activity_identity_check(const models::ModelFunction& model,
                                       const Spectrum& spectrum, int n,
                                       int quadrature_order);

}  // namespace dimred::subspace
