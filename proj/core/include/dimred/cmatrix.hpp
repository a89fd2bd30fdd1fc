#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dimred/model.hpp"
#include "dimred/parameter_space.hpp"

namespace dimred::subspace {

struct EstimatorInfo {
  enum class Method { kQuadrature, kMonteCarlo, kFromSamples };
  Method method = Method::kQuadrature;
  int points_per_dim = 0;          // quadrature only
  std::int64_t sample_count = 0;   // monte_carlo / from_samples
  std::uint64_t seed = 0;
  bool seeded = false;
  std::string model_name;
  std::string space_fingerprint;

  std::string method_name() const;
};

// Estimate of C = E[grad f grad f^T] under the uniform density on [-1,1]^m.
// Symmetrized on construction; positive semidefinite up to roundoff.
struct CMatrixEstimate {
  Eigen::MatrixXd C;
  EstimatorInfo info;

  int m() const { return static_cast<int>(C.rows()); }
};

// Gradient samples with enough provenance to rebuild the estimate, feed the
// bootstrap, or round-trip through the sample-file format.
struct GradientSampleSet {
  std::vector<models::EvaluationRecord> records;
  std::vector<std::string> param_names;
  std::string space_fingerprint;
  std::string model_name;  // "external" when loaded from a foreign file
  std::string provenance;  // free-form: seed, conversion notes, solver id
  std::uint64_t seed = 0;
  bool seeded = false;

  int m() const {
    return records.empty() ? static_cast<int>(param_names.size())
                           : static_cast<int>(records.front().xi.size());
  }
  std::int64_t size() const { return static_cast<std::int64_t>(records.size()); }
};

// Refuse more than this many quadrature points unless force is set.
inline constexpr std::int64_t kQuadratureBudget = 10'000'000;

// Tensor-product Gauss-Legendre estimate, weights normalized to the uniform
// probability density.  Deterministic; thread count never changes the result.
CMatrixEstimate estimate_c_quadrature(const models::ModelFunction& model,
                                      int points_per_dim, bool force = false,
                                      int threads = 0);

// Monte Carlo estimate from M i.i.d. uniform draws on [-1,1]^m; returns the
// evaluated samples for bootstrap or persistence reuse.
std::pair<CMatrixEstimate, GradientSampleSet> estimate_c_monte_carlo(
    const models::ModelFunction& model, std::int64_t M, std::uint64_t seed,
    int threads = 0);

// (1/M) sum of g g^T over an existing sample set.
CMatrixEstimate estimate_c_from_samples(const GradientSampleSet& samples);

}  // namespace dimred::subspace
