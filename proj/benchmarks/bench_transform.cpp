#include <benchmark/benchmark.h>

#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/transform.hpp"

namespace {

void BM_Theorem1(benchmark::State& state) {
  cmaj::RngStream rng(3);
  const auto xs = cmaj::sample_real(cmaj::IncrementModel::gaussian(), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(cmaj::theorem1_transform(xs, rng));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Theorem1)->RangeMultiplier(8)->Range(64, 1 << 15)->Complexity();

void BM_Transform3214RoundTrip(benchmark::State& state) {
  cmaj::RngStream rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = cmaj::build_walk(cmaj::sample_real(cmaj::IncrementModel::gaussian(), n, rng));
  std::size_t U = 1;
  for (auto _ : state) {
    const auto f = cmaj::path_transform_3214(w, U);
    benchmark::DoNotOptimize(cmaj::invert_3214(f.k, f.walk));
    U = U % n + 1;
  }
}
BENCHMARK(BM_Transform3214RoundTrip)->Arg(20)->Arg(200)->Arg(2000);

}  // namespace
