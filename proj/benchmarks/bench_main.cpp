#include <moyal/moyal.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

moyal::AlgebraElement random_element(int n, double theta, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  moyal::CMatrix c(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) c(i, j) = {g(rng), g(rng)};
  return {c, theta};
}

void BM_star(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_element(n, 2.0, 1), b = random_element(n, 2.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(moyal::star(a, b));
  state.SetComplexityN(n);
}
BENCHMARK(BM_star)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_distance_lp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moyal::distance_lp_oracle(n - 2, 0, 2.0, n));
}
BENCHMARK(BM_distance_lp)->RangeMultiplier(2)->Range(8, 64);

void BM_seminorm_direct(benchmark::State& state) {
  moyal::set_warning_sink(nullptr);
  const auto a = random_element(static_cast<int>(state.range(0)), 2.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(moyal::seminorm_dk_direct(a, 0.5));
}
BENCHMARK(BM_seminorm_direct)->RangeMultiplier(2)->Range(8, 32)->Arg(48);

void BM_seminorm_formula(benchmark::State& state) {
  moyal::set_warning_sink(nullptr);
  const auto a = random_element(static_cast<int>(state.range(0)), 2.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(moyal::seminorm_dk(a, 0.5));
}
BENCHMARK(BM_seminorm_formula)->RangeMultiplier(2)->Range(8, 32)->Arg(48);

void BM_star_integral(benchmark::State& state) {
  const moyal::Grid grid{static_cast<int>(state.range(0)), 6.0};
  const auto f = moyal::sample_f00(grid, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(moyal::star_integral(f, f, 2.0));
}
BENCHMARK(BM_star_integral)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_cone_membership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = moyal::witness_element(moyal::Witness::a, n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(moyal::cone_membership(a));
}
BENCHMARK(BM_cone_membership)->RangeMultiplier(2)->Range(16, 128);

}  // namespace

BENCHMARK_MAIN();
