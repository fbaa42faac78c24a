#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "fdrlim/estimators.hpp"
#include "fdrlim/gcm.hpp"
#include "fdrlim/grenander.hpp"
#include "fdrlim/lfdr_law.hpp"
#include "fdrlim/mixture.hpp"
#include "fdrlim/procedures.hpp"
#include "fdrlim/rng.hpp"
#include "fdrlim/stats.hpp"
#include "fdrlim/tradeoff.hpp"

namespace {

using namespace fdrlim;

constexpr std::uint64_t kSeed = 20260819;

std::vector<double> uniform_mixture_sample(std::size_t n) {
  RngStream rng = RngStream::child(kSeed, {n});
  return MixtureModel::uniform_step(0.75, 0.5).sample(n, rng).x;
}

void BM_MfnrStarGaussian(benchmark::State& state) {
  const LfdrLaw law(MixtureModel::gaussian_location(0.75, 1.0));
  double alpha = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.mfnr_star(alpha));
    alpha = alpha < 0.7 ? alpha + 0.01 : 0.05;
  }
}
BENCHMARK(BM_MfnrStarGaussian);

void BM_TradeoffCurveStep(benchmark::State& state) {
  const LfdrLaw law(MixtureModel::uniform_step(0.75, 0.5));
  const std::vector<double> grid = default_alpha_grid(law);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fnr_star_curve(law, grid));
  }
}
BENCHMARK(BM_TradeoffCurveStep);

void BM_Grenander(benchmark::State& state) {
  const std::vector<double> x = uniform_mixture_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grenander(x));
  }
}
BENCHMARK(BM_Grenander)->Range(1000, 100000);

void BM_GcmOfPoints(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  RngStream rng = RngStream::child(kSeed, {2, n});
  std::vector<KnotPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({static_cast<double>(i) / static_cast<double>(n - 1), rng.uniform01()});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcm_of_points(pts));
  }
}
BENCHMARK(BM_GcmOfPoints)->Range(1000, 100000);

void BM_DataDrivenTrial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const MixtureModel m = MixtureModel::uniform_step(0.75, 0.5);
  const DensityFn f0 = [](double) { return 1.0; };
  const EstimatorSpec est = parse_estimator_spec("grenander");
  std::uint64_t trial = 0;
  for (auto _ : state) {
    state.PauseTiming();
    RngStream rng = RngStream::child(kSeed, {3, n, trial++});
    const std::vector<double> x = m.sample(n, rng).x;
    state.ResumeTiming();
    benchmark::DoNotOptimize(data_driven(x, 0.3, 0.75, f0, est, rng));
  }
}
BENCHMARK(BM_DataDrivenTrial)->Arg(500)->Arg(5000)->Arg(20000);

void BM_NpOracleTrial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const MixtureModel m = MixtureModel::gaussian_location(0.75, 2.0);
  const LfdrLaw law(m);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    state.PauseTiming();
    RngStream rng = RngStream::child(kSeed, {4, n, trial++});
    const std::vector<double> x = m.sample(n, rng).x;
    state.ResumeTiming();
    benchmark::DoNotOptimize(np_oracle(law, 0.3, x, rng));
  }
}
BENCHMARK(BM_NpOracleTrial)->Arg(500)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
