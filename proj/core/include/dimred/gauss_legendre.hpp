#pragma once

#include <vector>

namespace dimred::subspace {

// Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree 2n-1,
// weights sum to 2 (the interval length).  Callers integrating against the
// uniform probability density divide each weight by 2.
struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive, symmetric
};

GaussLegendreRule gauss_legendre(int n);

}  // namespace dimred::subspace
