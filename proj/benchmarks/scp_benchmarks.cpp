#include <cmath>
#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "scp/conformal.hpp"
#include "scp/covariance.hpp"
#include "scp/evaluate.hpp"
#include "scp/simulate.hpp"

namespace {

const scp::MaternParams kTruth{1.0, 3.0, 0.1, 0.7};

scp::SpatialDataset scenario(std::size_t side, int id = 1, std::uint64_t seed = 1) {
  scp::ScenarioSpec spec;
  spec.scenario_id = id;
  spec.grid_side = side;
  spec.seed = seed;
  return scp::generate_scenario(spec);
}

void BM_MaternCorrelation(benchmark::State& state) {
  const double kappa = state.range(0) / 10.0;
  double d = 0.0;
  for (auto _ : state) {
    d = d < 1.0 ? d + 1e-3 : 1e-6;
    benchmark::DoNotOptimize(scp::matern_correlation(d, 0.1, kappa));
  }
}
BENCHMARK(BM_MaternCorrelation)->Arg(5)->Arg(7)->Arg(15)->Arg(23);

void BM_PrecisionFactor(benchmark::State& state) {
  const auto pts = scp::grid_locations(static_cast<std::size_t>(state.range(0)));
  const auto sigma = scp::covariance_matrix(pts, kTruth);
  for (auto _ : state) {
    scp::PrecisionFactor f(sigma);
    benchmark::DoNotOptimize(f.diagonal().data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_PrecisionFactor)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_GscpInterval(benchmark::State& state) {
  const auto data = scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scp::gscp_interval(data, {0.51, 0.49}, kTruth, 0.1));
  }
}
BENCHMARK(BM_GscpInterval)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SlscpInterval(benchmark::State& state) {
  const auto data = scenario(20);
  const double eta = state.range(0) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scp::slscp_interval(data, {0.51, 0.49}, kTruth, 0.1, eta));
  }
}
BENCHMARK(BM_SlscpInterval)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

// Full leave-one-out pass over one dataset, covariance fixed.
void BM_LooHarness(benchmark::State& state) {
  const scp::LooHarness harness(scenario(20), kTruth);
  scp::MethodConfig method;
  method.method = static_cast<scp::Method>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness.run(method, 0.1, 1));
  }
  state.SetLabel(scp::to_string(method.method));
}
BENCHMARK(BM_LooHarness)
    ->Arg(static_cast<int>(scp::Method::kriging))
    ->Arg(static_cast<int>(scp::Method::gscp))
    ->Arg(static_cast<int>(scp::Method::lscp))
    ->Arg(static_cast<int>(scp::Method::slscp))
    ->Unit(benchmark::kMillisecond);

void BM_VariogramFit(benchmark::State& state) {
  const auto data = scenario(20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scp::fit_dataset(data));
  }
}
BENCHMARK(BM_VariogramFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
