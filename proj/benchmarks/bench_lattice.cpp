#include <benchmark/benchmark.h>

#include "cmaj/lattice.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"

namespace {

void BM_GfRademacher(benchmark::State& state) {
  const auto model = cmaj::IncrementModel::rademacher();
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cmaj::gf_HKF(model, order, order));
}
BENCHMARK(BM_GfRademacher)->Arg(8)->Arg(16)->Arg(32);

void BM_NestedCompositions(benchmark::State& state) {
  cmaj::RngStream rng(5);
  const cmaj::NestedCompositionSampler sample(0.6, cmaj::IncrementModel::rademacher());
  for (auto _ : state) benchmark::DoNotOptimize(sample(rng));
}
BENCHMARK(BM_NestedCompositions);

void BM_ConditionedWalk(benchmark::State& state) {
  cmaj::RngStream rng(6);
  const auto maj = cmaj::majorant_from_faces({{8, cmaj::Rational(2)}, {16, cmaj::Rational(0)}, {8, cmaj::Rational(-4)}});
  const cmaj::ConditionedWalkSampler sample(maj, cmaj::IncrementModel::rademacher());
  for (auto _ : state) benchmark::DoNotOptimize(sample(rng));
}
BENCHMARK(BM_ConditionedWalk);

}  // namespace
