#pragma once

#include <cstdint>
#include <vector>

#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/gradients.hpp"
#include "cdf2pdf/loss.hpp"
#include "cdf2pdf/network.hpp"
#include "cdf2pdf/optimizer.hpp"

namespace cdf2pdf::train {

struct TrainConfig {
  nn::Loss loss;
  nn::OptimizerConfig optimizer;
  long batch = 512;
  long iterations = 10000;
  long val_every = 200;        // validation cadence, also the curve cadence
  std::uint64_t seed = 0;      // epoch shuffling
  bool standardize = true;     // fit the fixed input map on the training set
  double divergence_factor = 10.0;  // abort when train loss exceeds this
                                    // multiple of its initial value
};

// train_loss is the mean batch loss since the previous record; val_loss is
// the full validation loss at the recorded iteration.
struct LossCurve {
  std::vector<long> iteration;
  std::vector<double> train_loss;
  std::vector<double> val_loss;
};

struct TrainResult {
  nn::Network net;  // checkpoint with the smallest recorded validation loss
  LossCurve curve;
  double best_val_loss = 0.0;
  long best_iteration = 0;
};

// Mini-batch training with seeded epoch shuffling: every training row is
// visited exactly once per epoch, one epoch being ceil(n/batch) iterations
// (the last batch of an epoch may be short). Deterministic for fixed inputs
// and config. Throws DivergenceError when the guard trips.
TrainResult train_regressor(const data::Dataset& train_set,
                            const data::Dataset& val_set,
                            const nn::NetworkSpec& spec,
                            const TrainConfig& config);

// iterations for `epochs` passes over n records at the given batch size
long iterations_for_epochs(std::size_t n, long batch, long epochs);

}  // namespace cdf2pdf::train
