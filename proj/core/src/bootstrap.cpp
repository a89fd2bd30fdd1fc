#include "dimred/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dimred/errors.hpp"
#include "dimred/rng.hpp"

namespace dimred::subspace {
namespace {

// Percentile with linear interpolation at rank q * (R - 1) over sorted data.
double percentile(const std::vector<double>& sorted, double q) {
  const size_t r = sorted.size();
  if (r == 1) return sorted[0];
  const double pos = q * static_cast<double>(r - 1);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= r) return sorted[r - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

BootstrapSummary bootstrap_spectrum(const GradientSampleSet& samples,
                                    int replicates, std::uint64_t seed,
                                    int threads) {
  if (replicates < 1) {
    throw ArgumentError("bootstrap: replicates must be >= 1");
  }
  const std::int64_t M = samples.size();
  if (M < 2) throw ArgumentError("bootstrap: need at least 2 samples");
  const int m = samples.m();

  const Spectrum full = eigendecompose(estimate_c_from_samples(samples));

  // lambdas[r] holds the replicate's descending eigenvalues; dists[r][n-1]
  // the subspace distance to the full-sample n-dimensional subspace.
  std::vector<std::vector<double>> lambdas(static_cast<size_t>(replicates));
  std::vector<std::vector<double>> dists(static_cast<size_t>(replicates));

  std::atomic<int> next{0};
  auto worker = [&]() {
    GradientSampleSet resampled;
    resampled.param_names = samples.param_names;
    resampled.space_fingerprint = samples.space_fingerprint;
    resampled.model_name = samples.model_name;
    resampled.records.resize(static_cast<size_t>(M));
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= replicates) break;
      const CounterRng rng(seed, streams::kBootstrapBase +
                                     static_cast<std::uint64_t>(r));
      for (std::int64_t i = 0; i < M; ++i) {
        const std::uint64_t pick =
            rng.uniform_index(static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(M));
        resampled.records[static_cast<size_t>(i)] =
            samples.records[static_cast<size_t>(pick)];
      }
      const Spectrum spec = eigendecompose(estimate_c_from_samples(resampled));
      auto& lam = lambdas[static_cast<size_t>(r)];
      lam.resize(m);
      for (int i = 0; i < m; ++i) lam[i] = spec.eigenvalues[i];
      auto& dist = dists[static_cast<size_t>(r)];
      dist.resize(m - 1);
      for (int n = 1; n < m; ++n) {
        dist[n - 1] = subspace_distance(spec.eigenvectors.leftCols(n),
                                        full.eigenvectors.leftCols(n));
      }
    }
  };

  const int nthreads = std::min(resolve_threads(threads), replicates);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BootstrapSummary out;
  out.replicates = replicates;
  out.seed = seed;
  out.lambda_min.resize(m);
  out.lambda_max.resize(m);
  out.lambda_lo.resize(m);
  out.lambda_hi.resize(m);
  std::vector<double> column(static_cast<size_t>(replicates));
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < replicates; ++r) {
      column[static_cast<size_t>(r)] = lambdas[static_cast<size_t>(r)][i];
    }
    std::sort(column.begin(), column.end());
    out.lambda_min[i] = column.front();
    out.lambda_max[i] = column.back();
    out.lambda_lo[i] = percentile(column, 0.025);
    out.lambda_hi[i] = percentile(column, 0.975);
  }
  for (int n = 1; n < m; ++n) {
    for (int r = 0; r < replicates; ++r) {
      column[static_cast<size_t>(r)] = dists[static_cast<size_t>(r)][n - 1];
    }
    std::sort(column.begin(), column.end());
    BootstrapSummary::DistanceSummary ds;
    ds.n = n;
    ds.min = column.front();
    ds.max = column.back();
    ds.lo = percentile(column, 0.025);
    ds.hi = percentile(column, 0.975);
    double sum = 0.0;
    for (double v : column) sum += v;
    ds.mean = sum / static_cast<double>(replicates);
    out.distances.push_back(ds);
  }
  return out;
}

}  // namespace dimred::subspace
