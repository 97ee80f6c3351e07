#include <benchmark/benchmark.h>

#include "acsel/experiment.hpp"
#include "acsel/selectors.hpp"
#include "acsel/simulate.hpp"
#include "acsel/vmf.hpp"
#include "acsel/wrapper.hpp"

using namespace acsel;

namespace {

SimScenario equicorrelated(int n, int p, double rho) {
  SimScenario s;
  s.name = "bench";
  s.n_obs = n;
  s.n_vars = p;
  s.beta = Eigen::VectorXd::Zero(p);
  s.beta.head(std::min(5, p)).setOnes();
  s.cov.kind = rho > 0 ? CovarianceSpec::Kind::constant
                       : CovarianceSpec::Kind::identity;
  s.cov.rho = rho;
  s.snr = 5.0;
  s.replicates = 1;
  return s;
}

StandardizedDesign bench_design(int n, int p, double rho) {
  const ScenarioSampler sampler(equicorrelated(n, p, rho));
  return standardize(sampler.replicate(99, 0));
}

void BM_LassoPath(benchmark::State& state) {
  const StandardizedDesign sd =
      bench_design(static_cast<int>(state.range(0)),
                   static_cast<int>(state.range(1)), 0.5);
  const Eigen::VectorXd grid = default_lambda_grid(sd);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lasso_path(sd, grid));
  }
}
BENCHMARK(BM_LassoPath)->Args({20, 50})->Args({25, 500})->Args({100, 50});

void BM_SelectLasso(benchmark::State& state) {
  const StandardizedDesign sd = bench_design(20, 50, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_lasso(sd, Criterion::gcv));
  }
}
BENCHMARK(BM_SelectLasso);

void BM_SelectStepwise(benchmark::State& state) {
  const StandardizedDesign sd = bench_design(25, 500, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_stepwise(sd, Criterion::bic));
  }
}
BENCHMARK(BM_SelectStepwise);

void BM_VmfSample(benchmark::State& state) {
  RngStream rng(7);
  VmfParams p{rng.unit_sphere(static_cast<int>(state.range(0))), 50.0};
  RngStream draws(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_vmf_one(p, draws));
  }
}
BENCHMARK(BM_VmfSample)->Arg(9)->Arg(24)->Arg(441);

void BM_ResampleDesign(benchmark::State& state) {
  const StandardizedDesign sd = bench_design(20, 50, 0.5);
  const GroupMap gm = group_naive(correlation(sd), 0.75);
  const ResamplePlan plan(sd, embed_columns(sd), gm);
  RngStream rng(13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan.draw(rng));
  }
}
BENCHMARK(BM_ResampleDesign);

void BM_AcselRun(benchmark::State& state) {
  const StandardizedDesign sd = bench_design(20, 50, 0.5);
  const GroupMap gm = group_naive(correlation(sd), 0.8);
  const Selector select = make_selector(parse_selector("lasso:gcv"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(acsel_run(sd, select, gm, 10, 17));
  }
}
BENCHMARK(BM_AcselRun);

}  // namespace

BENCHMARK_MAIN();
