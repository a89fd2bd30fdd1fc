#include "dimred/cmatrix.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "dimred/errors.hpp"
#include "dimred/gauss_legendre.hpp"
#include "dimred/rng.hpp"

namespace dimred::subspace {
namespace {

// Points are accumulated into per-chunk partial sums of fixed size, and the
// partials are added in chunk order afterwards.  Work distribution across
// threads therefore never changes a single bit of the result.
constexpr std::int64_t kChunk = 4096;

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// eval fills xi and g for point index i and returns the point's weight.
Eigen::MatrixXd accumulate_outer_products(
    std::int64_t total, int m,
    const std::function<double(std::int64_t, std::vector<double>&,
                               std::vector<double>&)>& eval,
    int threads) {
  const std::int64_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<Eigen::MatrixXd> partials(static_cast<size_t>(nchunks));

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mutex;
  std::int64_t err_index = std::numeric_limits<std::int64_t>::max();
  std::string err_message;

  auto worker = [&]() {
    std::vector<double> xi(m), g(m);
    Eigen::VectorXd gv(m);
    while (!stop.load(std::memory_order_relaxed)) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
      const std::int64_t begin = c * kChunk;
      const std::int64_t end = std::min(total, begin + kChunk);
      for (std::int64_t i = begin; i < end; ++i) {
        double w = 0.0;
        try {
          w = eval(i, xi, g);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (i < err_index) {
            err_index = i;
            err_message = e.what();
          }
          stop.store(true, std::memory_order_relaxed);
          return;
        }
        for (int d = 0; d < m; ++d) gv[d] = g[d];
        S.noalias() += (w * gv) * gv.transpose();
      }
      partials[static_cast<size_t>(c)] = std::move(S);
    }
  };

  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), nchunks));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (err_index != std::numeric_limits<std::int64_t>::max()) {
    throw NumericError("gradient evaluation failed at point " +
                       std::to_string(err_index) + ": " + err_message);
  }

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
  for (const auto& S : partials) C += S;
  // Scrub roundoff asymmetry from the rank-1 updates before any eigensolve.
  C = 0.5 * (C + C.transpose()).eval();
  return C;
}

}  // namespace

std::string EstimatorInfo::method_name() const {
  switch (method) {
    case Method::kQuadrature: return "quadrature";
    case Method::kMonteCarlo: return "monte_carlo";
    case Method::kFromSamples: return "from_samples";
  }
  return "unknown";
}

CMatrixEstimate estimate_c_quadrature(const models::ModelFunction& model,
                                      int points_per_dim, bool force,
                                      int threads) {
  if (points_per_dim < 1) {
    throw ArgumentError("quadrature: points_per_dim must be >= 1");
  }
  const int m = model.dim();
  std::int64_t total = 1;
  for (int d = 0; d < m; ++d) {
    if (total > std::numeric_limits<std::int64_t>::max() / points_per_dim) {
      throw ArgumentError("quadrature: point count overflows");
    }
    total *= points_per_dim;
  }
  if (total > kQuadratureBudget && !force) {
    throw ArgumentError(
        "quadrature: " + std::to_string(total) + " points exceeds the " +
        std::to_string(kQuadratureBudget) + "-point budget (pass force to "
        "override)");
  }

  const GaussLegendreRule rule = gauss_legendre(points_per_dim);
  std::vector<double> prob_weights(rule.weights);
  for (double& w : prob_weights) w *= 0.5;  // uniform density on [-1,1]

  const auto& space = model.space();
  auto eval = [&](std::int64_t i, std::vector<double>& xi,
                  std::vector<double>& g) -> double {
    double w = 1.0;
    std::int64_t rest = i;
    for (int d = 0; d < m; ++d) {
      const int node = static_cast<int>(rest % points_per_dim);
      rest /= points_per_dim;
      xi[d] = rule.nodes[node];
      w *= prob_weights[node];
    }
    model.gradient(xi, g);
    return w;
  };

  CMatrixEstimate est;
  est.C = accumulate_outer_products(total, m, eval, threads);
  est.info.method = EstimatorInfo::Method::kQuadrature;
  est.info.points_per_dim = points_per_dim;
  est.info.sample_count = total;
  est.info.model_name = model.name();
  est.info.space_fingerprint = space.fingerprint();
  return est;
}

std::pair<CMatrixEstimate, GradientSampleSet> estimate_c_monte_carlo(
    const models::ModelFunction& model, std::int64_t M, std::uint64_t seed,
    int threads) {
  if (M < 1) throw ArgumentError("monte_carlo: M must be >= 1");
  const int m = model.dim();
  const CounterRng rng(seed, streams::kMonteCarlo);

  GradientSampleSet samples;
  samples.records.resize(static_cast<size_t>(M));
  samples.param_names = model.space().names();
  samples.space_fingerprint = model.space().fingerprint();
  samples.model_name = model.name();
  samples.provenance = "internal: monte_carlo M=" + std::to_string(M) +
                       " seed=" + std::to_string(seed);
  samples.seed = seed;
  samples.seeded = true;

  const double w = 1.0 / static_cast<double>(M);
  auto eval = [&](std::int64_t i, std::vector<double>& xi,
                  std::vector<double>& g) -> double {
    const std::uint64_t base = static_cast<std::uint64_t>(i) *
                               static_cast<std::uint64_t>(m);
    for (int d = 0; d < m; ++d) xi[d] = rng.uniform_sym(base + d);
    model.gradient(xi, g);
    auto& rec = samples.records[static_cast<size_t>(i)];
    rec.xi = xi;
    rec.x_physical = model.space().physical_from_normalized(xi);
    rec.f = model.value(xi);
    rec.grad = g;
    return w;
  };

  CMatrixEstimate est;
  est.C = accumulate_outer_products(M, m, eval, threads);
  est.info.method = EstimatorInfo::Method::kMonteCarlo;
  est.info.sample_count = M;
  est.info.seed = seed;
  est.info.seeded = true;
  est.info.model_name = model.name();
  est.info.space_fingerprint = model.space().fingerprint();
  return {std::move(est), std::move(samples)};
}

CMatrixEstimate estimate_c_from_samples(const GradientSampleSet& samples) {
  const std::int64_t M = samples.size();
  if (M < 1) throw ArgumentError("from_samples: sample set is empty");
  const int m = samples.m();
  for (std::int64_t i = 0; i < M; ++i) {
    const auto& rec = samples.records[static_cast<size_t>(i)];
    if (static_cast<int>(rec.xi.size()) != m ||
        static_cast<int>(rec.grad.size()) != m) {
      throw ArgumentError("from_samples: record " + std::to_string(i) +
                          " has inconsistent dimensions");
    }
    for (double v : rec.grad) {
      if (!std::isfinite(v)) {
        throw ArgumentError("from_samples: record " + std::to_string(i) +
                            " has a non-finite gradient");
      }
    }
  }

  const double w = 1.0 / static_cast<double>(M);
  auto eval = [&](std::int64_t i, std::vector<double>& xi,
                  std::vector<double>& g) -> double {
    const auto& rec = samples.records[static_cast<size_t>(i)];
    xi = rec.xi;
    g = rec.grad;
    return w;
  };

  CMatrixEstimate est;
  est.C = accumulate_outer_products(M, m, eval, 1);
  est.info.method = EstimatorInfo::Method::kFromSamples;
  est.info.sample_count = M;
  est.info.seed = samples.seed;
  est.info.seeded = samples.seeded;
  est.info.model_name = samples.model_name;
  est.info.space_fingerprint = samples.space_fingerprint;
  return est;
}

}  // namespace dimred::subspace
