#include "cdf2pdf/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/rng.hpp"

namespace cdf2pdf::train {

TrialConfig sample_trial(const SweepSpace& space, std::uint64_t seed, int index) {
  if (space.optimizers.empty() || space.activations.empty()) {
    throw ConfigError("sweep space: empty optimizer or activation set");
  }
  RngStream rs(child_seed(seed, "sweep-sample", static_cast<std::uint64_t>(index)));
  TrialConfig c;
  c.layers = static_cast<int>(rs.uniform_int(space.layers_lo, space.layers_hi));
  c.width = static_cast<int>(rs.uniform_int(space.width_lo, space.width_hi));
  c.optimizer = space.optimizers[static_cast<std::size_t>(
      rs.uniform_int(0, static_cast<long>(space.optimizers.size()) - 1))];
  c.lr = std::pow(10.0, rs.uniform(std::log10(space.lr_lo), std::log10(space.lr_hi)));
  c.batch = rs.uniform_int(space.batch_lo, space.batch_hi);
  c.activation = space.activations[static_cast<std::size_t>(
      rs.uniform_int(0, static_cast<long>(space.activations.size()) - 1))];
  return c;
}

namespace {

TrainConfig trial_train_config(const TrialConfig& tc, const SweepBudget& budget,
                               std::size_t n_train, std::uint64_t seed, int index) {
  TrainConfig cfg;
  cfg.loss = budget.loss;
  cfg.optimizer.kind = tc.optimizer;
  cfg.optimizer.lr = tc.lr;
  cfg.batch = tc.batch;
  cfg.iterations = budget.iterations > 0
                       ? budget.iterations
                       : iterations_for_epochs(n_train, tc.batch, budget.epochs);
  cfg.val_every = std::min(budget.val_every, cfg.iterations);
  cfg.seed = child_seed(seed, "sweep-train", static_cast<std::uint64_t>(index));
  cfg.standardize = budget.standardize;
  return cfg;
}

nn::NetworkSpec trial_spec(const TrialConfig& tc, std::uint64_t seed, int index) {
  return nn::NetworkSpec::dense(
      3, tc.layers, tc.width, tc.activation, nn::Activation::sigmoid,
      {child_seed(seed, "sweep-init", static_cast<std::uint64_t>(index)), 1.0});
}

}  // namespace

SweepResult random_sweep(const SweepSpace& space, int trials,
                         const data::Dataset& train_set,
                         const data::Dataset& val_set, const SweepBudget& budget,
                         std::uint64_t seed, int workers) {
  if (trials < 1) throw ConfigError("sweep: need at least one trial");
  if (workers < 1) throw ConfigError("sweep: workers must be >= 1");

  SweepResult result;
  result.trials.resize(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    result.trials[static_cast<std::size_t>(t)].index = t;
    result.trials[static_cast<std::size_t>(t)].config = sample_trial(space, seed, t);
    result.trials[static_cast<std::size_t>(t)].val_loss =
        std::numeric_limits<double>::infinity();
  }

  std::atomic<int> next{0};
  auto run_range = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      SweepTrial& trial = result.trials[static_cast<std::size_t>(t)];
      try {
        const TrainConfig cfg = trial_train_config(trial.config, budget,
                                                   train_set.size(), seed, t);
        const nn::NetworkSpec spec = trial_spec(trial.config, seed, t);
        const TrainResult r = train_regressor(train_set, val_set, spec, cfg);
        trial.val_loss = r.best_val_loss;
      } catch (const std::exception& e) {
        trial.error = e.what();
      }
    }
  };

  if (workers == 1) {
    run_range();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = std::min(workers, trials);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(run_range);
    for (std::thread& th : pool) th.join();
  }

  int best = -1;
  for (int t = 0; t < trials; ++t) {
    const SweepTrial& trial = result.trials[static_cast<std::size_t>(t)];
    if (trial.error.empty() &&
        (best < 0 ||
         trial.val_loss < result.trials[static_cast<std::size_t>(best)].val_loss)) {
      best = t;
    }
  }
  if (best < 0) {
    std::ostringstream msg;
    msg << "sweep: all " << trials << " trials failed:";
    for (const SweepTrial& trial : result.trials) {
      msg << "\n  trial " << trial.index << ": " << trial.error;
    }
    throw ConfigError(msg.str());
  }

  result.best_index = best;
  const TrialConfig& bc = result.trials[static_cast<std::size_t>(best)].config;
  result.best_spec = trial_spec(bc, seed, best);
  result.best_config =
      trial_train_config(bc, budget, train_set.size(), seed, best);
  return result;
}

}  // namespace cdf2pdf::train
