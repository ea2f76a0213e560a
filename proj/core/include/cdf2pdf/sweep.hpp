#pragma once

#include <string>
#include <vector>

#include "cdf2pdf/training.hpp"

namespace cdf2pdf::train {

// Random-search space over architecture and optimization hyperparameters.
// Integers are sampled uniformly inclusive, the learning rate log-uniformly.
struct SweepSpace {
  int layers_lo = 1, layers_hi = 6;
  int width_lo = 1, width_hi = 64;
  std::vector<nn::OptimizerKind> optimizers = {
      nn::OptimizerKind::adam, nn::OptimizerKind::nadam,
      nn::OptimizerKind::rmsprop, nn::OptimizerKind::sgd};
  double lr_lo = 1e-6, lr_hi = 1e-2;
  long batch_lo = 50, batch_hi = 30000;
  std::vector<nn::Activation> activations = {
      nn::Activation::relu, nn::Activation::leaky_relu, nn::Activation::selu,
      nn::Activation::prelu};
};

struct TrialConfig {
  int layers = 0;
  int width = 0;
  nn::OptimizerKind optimizer = nn::OptimizerKind::adam;
  double lr = 0.0;
  long batch = 0;
  nn::Activation activation = nn::Activation::relu;
};

struct SweepTrial {
  int index = 0;
  TrialConfig config;
  double val_loss = 0.0;      // +inf for failed trials
  std::string error;          // empty when the trial trained
};

// Per-trial training budget; when epochs > 0 the iteration count follows the
// trial's own batch size.
struct SweepBudget {
  nn::Loss loss;
  long iterations = 0;
  long epochs = 5;
  long val_every = 200;
  bool standardize = true;
};

struct SweepResult {
  std::vector<SweepTrial> trials;   // canonical order by trial index
  int best_index = -1;
  nn::NetworkSpec best_spec;
  TrainConfig best_config;
};

// One sampled configuration, deterministic in (seed, index); sampling order
// is layers, width, optimizer, lr, batch, activation.
TrialConfig sample_trial(const SweepSpace& space, std::uint64_t seed, int index);

// Random search: `trials` sampled configurations trained under the budget,
// ranked by best validation loss. Failed trials (divergence, numeric errors)
// are recorded and skipped; if every trial fails, throws ConfigError carrying
// the per-trial messages. `workers` > 1 trains trials concurrently without
// changing any result.
SweepResult random_sweep(const SweepSpace& space, int trials,
                         const data::Dataset& train_set,
                         const data::Dataset& val_set, const SweepBudget& budget,
                         std::uint64_t seed, int workers = 1);

}  // namespace cdf2pdf::train
