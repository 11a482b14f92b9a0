#include <benchmark/benchmark.h>

#include <cmath>

#include "accelfront/dispersal.hpp"
#include "accelfront/grid.hpp"
#include "accelfront/integrator.hpp"

namespace af = accelfront;

namespace {

af::Field gaussian(const af::Grid& g) {
  return af::Field::from_function(g, [](double x) { return std::exp(-x * x / 100.0); });
}

void BM_FractionalSemigroupStep(benchmark::State& state) {
  const af::Grid g(400.0, static_cast<std::size_t>(state.range(0)));
  const af::Symbol m = af::build_symbol(af::FractionalLaplacian{0.9}, g);
  af::Field u = gaussian(g);
  for (auto _ : state) {
    u = af::semigroup_step(u, m, 0.01);
    benchmark::DoNotOptimize(u.storage().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FractionalSemigroupStep)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_StrangStepConvolution(benchmark::State& state) {
  af::RunConfig cfg;
  cfg.n_points = static_cast<std::size_t>(state.range(0));
  cfg.dispersal = af::Convolution{af::KernelSpec{af::StretchedExponentialKernel{}}};
  af::Simulation sim(cfg, af::initial_field(cfg));
  double t = 0.0;
  for (auto _ : state) {
    t += cfg.dt;
    sim.step_to(t);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrangStepConvolution)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_FastDiffusionStep(benchmark::State& state) {
  const af::Grid g(400.0, static_cast<std::size_t>(state.range(0)));
  af::Field u = gaussian(g);
  for (auto _ : state) {
    af::fast_diffusion_step(u, 0.5, 0.01, af::kDefaultRegularizationFloor);
    benchmark::DoNotOptimize(u.storage().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FastDiffusionStep)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_DirectConvolution(benchmark::State& state) {
  const af::Grid g(100.0, static_cast<std::size_t>(state.range(0)));
  const af::Field u = gaussian(g);
  const af::KernelSpec k{af::StretchedExponentialKernel{}};
  for (auto _ : state) benchmark::DoNotOptimize(af::convolve_direct(u, k));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectConvolution)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Complexity();

}  // namespace
BENCHMARK_MAIN();
