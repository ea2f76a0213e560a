#include <benchmark/benchmark.h>

#include <vector>

#include "cdf2pdf/onoff.hpp"
#include "cdf2pdf/rng.hpp"
#include "cdf2pdf/sir.hpp"

using namespace cdf2pdf;

namespace {

void bm_poisson(benchmark::State& state) {
  RngStream rng(7);
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.poisson(mean));
  }
}

void bm_onoff_lambda(benchmark::State& state) {
  const sim::OnOffObservation obs{12, 7};
  const sim::OnOffParams p{9.5, 6.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::onoff_lambda(obs, p));
  }
}

void bm_sir_simulate(benchmark::State& state) {
  RngStream rng(11);
  const sim::SirParams p{0.1, 5e-4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::sir_simulate(p, 999, 1, 0, 50, rng));
  }
}

void bm_sir_mean(benchmark::State& state) {
  const sim::SirParams p{0.1, 5e-4};
  const sim::SirState init{999.0, 1.0, 0.0};
  std::vector<double> grid;
  for (int d = 1; d <= 50; ++d) grid.push_back(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::sir_mean_trajectory(p, init, grid, 0.01));
  }
}

}  // namespace

BENCHMARK(bm_poisson)->Arg(5)->Arg(100);
BENCHMARK(bm_onoff_lambda);
BENCHMARK(bm_sir_simulate);
BENCHMARK(bm_sir_mean);

BENCHMARK_MAIN();
