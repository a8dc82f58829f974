#include <benchmark/benchmark.h>

#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"

namespace {

void BM_MajorantGaussian(benchmark::State& state) {
  cmaj::RngStream rng(1);
  const auto w = cmaj::build_walk(cmaj::sample_real(cmaj::IncrementModel::gaussian(), state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(cmaj::concave_majorant(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MajorantGaussian)->RangeMultiplier(8)->Range(64, 1 << 18)->Complexity();

void BM_MajorantRational(benchmark::State& state) {
  cmaj::RngStream rng(2);
  const auto w = cmaj::build_walk(cmaj::sample_exact(cmaj::IncrementModel::rademacher(), state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(cmaj::concave_majorant(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MajorantRational)->RangeMultiplier(8)->Range(64, 1 << 15)->Complexity();

}  // namespace
