// Microbenchmarks for the hot paths of the toolkit: closed-form model
// evaluation, rational dimensional analysis, gradient-outer-product matrix
// assembly, eigendecomposition, and bootstrap resampling.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dimred/bootstrap.hpp"
#include "dimred/cmatrix.hpp"
#include "dimred/hartmann.hpp"
#include "dimred/parameter_space.hpp"
#include "dimred/spectrum.hpp"
#include "dimred/units.hpp"

namespace {

using dimred::models::HartmannModel;
using dimred::models::hartmann_space;

dimred::units::QuantitySpec q(std::string name, const std::string& unit) {
  return {std::move(name), dimred::units::parse_unit_expression(unit)};
}

std::vector<dimred::units::QuantitySpec> mhd_inputs() {
  return {
      q("l", "m"),           q("v", "m/s"),
      q("mu", "kg/(m*s)"),   q("rho", "kg/m^3"),
      q("p", "kg/(m*s^2)"),  q("eta", "kg*m^3/(s^3*A^2)"),
      q("B0", "kg/(s^2*A)"),
  };
}

void BM_HartmannUAvg(benchmark::State& state) {
  double mu = 0.1, rho = 2.0, dp = 1.0, eta = 1.5, b0 = 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimred::models::hartmann_u_avg(mu, rho, dp, eta, b0));
    b0 += 1e-12;  // defeat loop-invariant hoisting without changing the regime
  }
}
BENCHMARK(BM_HartmannUAvg);

void BM_HartmannGradient(benchmark::State& state) {
  const HartmannModel model(HartmannModel::Qoi::kUAvg, hartmann_space());
  std::vector<double> xi = {0.3, -0.2, 0.1, -0.4, 0.25};
  std::vector<double> grad(xi.size());
  for (auto _ : state) {
    model.gradient(xi, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_HartmannGradient);

void BM_PiGroups(benchmark::State& state) {
  const auto inputs = mhd_inputs();
  const auto output = q("u_avg", "m/s");
  for (auto _ : state) {
    auto groups = dimred::units::pi_groups(inputs, output);
    benchmark::DoNotOptimize(groups.U.rows());
  }
}
BENCHMARK(BM_PiGroups);

void BM_QuadratureC(benchmark::State& state) {
  const HartmannModel model(HartmannModel::Qoi::kUAvg, hartmann_space());
  const int ppd = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto est = dimred::subspace::estimate_c_quadrature(model, ppd, false, 1);
    benchmark::DoNotOptimize(est.C.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(std::pow(ppd, 5)));
}
BENCHMARK(BM_QuadratureC)->Arg(3)->Arg(5)->Arg(7);

void BM_MonteCarloC(benchmark::State& state) {
  const HartmannModel model(HartmannModel::Qoi::kUAvg, hartmann_space());
  const auto samples = static_cast<std::int64_t>(state.range(0));
  for (auto _ : state) {
    auto [est, set] =
        dimred::subspace::estimate_c_monte_carlo(model, samples, 7, 1);
    benchmark::DoNotOptimize(est.C.data());
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_MonteCarloC)->Arg(128)->Arg(512);

void BM_Eigendecompose(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  std::uint64_t s = 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      b(i, j) = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }
  }
  const Eigen::MatrixXd c = b.transpose() * b / static_cast<double>(m);
  for (auto _ : state) {
    auto spec = dimred::subspace::eigendecompose(c);
    benchmark::DoNotOptimize(spec.eigenvalues.data());
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(5)->Arg(20)->Arg(50);

void BM_BootstrapSpectrum(benchmark::State& state) {
  const HartmannModel model(HartmannModel::Qoi::kUAvg, hartmann_space());
  auto [est, set] = dimred::subspace::estimate_c_monte_carlo(model, 200, 11, 1);
  const auto replicates = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto summary = dimred::subspace::bootstrap_spectrum(set, replicates, 5, 1);
    benchmark::DoNotOptimize(summary.lambda_lo.data());
  }
  state.SetItemsProcessed(state.iterations() * replicates);
}
BENCHMARK(BM_BootstrapSpectrum)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
