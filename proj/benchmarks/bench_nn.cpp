#include <benchmark/benchmark.h>

#include <vector>

#include "cdf2pdf/gradients.hpp"
#include "cdf2pdf/loss.hpp"
#include "cdf2pdf/network.hpp"
#include "cdf2pdf/rng.hpp"

using namespace cdf2pdf;

namespace {

// production shape: 3 inputs, 6 hidden layers of 12, sigmoid head
nn::Network make_net(nn::Activation act) {
  const auto spec =
      nn::NetworkSpec::dense(3, 6, 12, act, nn::Activation::sigmoid,
                             nn::InitSpec{17, 1.0});
  return nn::init_network(spec);
}

struct BatchData {
  std::vector<double> x, y;
  nn::Batch view() const { return {x, y, 3}; }
};

BatchData make_batch(std::size_t n) {
  BatchData b;
  RngStream rng(29);
  b.x.resize(n * 3);
  b.y.resize(n);
  for (double& v : b.x) v = rng.uniform(-2.0, 2.0);
  for (double& v : b.y) v = rng.uniform(0.0, 1.0);
  return b;
}

void bm_forward(benchmark::State& state) {
  const nn::Network net = make_net(nn::Activation::silu);
  const std::vector<double> x = {0.3, -1.2, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(x));
  }
}

void bm_input_grad(benchmark::State& state) {
  const nn::Network net = make_net(nn::Activation::silu);
  const std::vector<double> x = {0.3, -1.2, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.input_grad(x, 2));
  }
}

void bm_grad_params(benchmark::State& state) {
  nn::Network net = make_net(nn::Activation::silu);
  const BatchData batch =
      make_batch(static_cast<std::size_t>(state.range(0)));
  const nn::Loss loss;
  nn::GradWorkspace ws;
  nn::GradientSet g = nn::GradientSet::zeros_like(net);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nn::grad_params(net, batch.view(), loss, g, ws));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_forward);
BENCHMARK(bm_input_grad);
BENCHMARK(bm_grad_params)->Arg(64)->Arg(512)->Arg(4096);

BENCHMARK_MAIN();
