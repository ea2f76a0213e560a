#pragma once

#include <string>
#include <vector>

#include "cdf2pdf/training.hpp"

namespace cdf2pdf::train {

// Staged refinement stack: stage 0 fits the target; each later stage fits the
// running residual rescaled by its root-mean-square, and contributes
// scale * prediction to the combined output. scales[0] is 1, scales[j] is the
// residual RMS the j-th stage was normalized by, so the scale sequence
// tracks how fast the stack converges.
struct MsnnStack {
  std::vector<nn::Network> stages;
  std::vector<double> scales;
  bool truncated = false;   // a residual RMS hit exactly zero
  std::string notice;       // human-readable truncation note

  std::size_t size() const { return stages.size(); }
};

// One spec and config per requested stage. Stages checkpoint on their own
// training loss (the stack has no separate validation set). Refinement stages
// conventionally use a sine first layer, tanh elsewhere, and a large
// first-layer init scale; that choice lives in the caller's stage specs.
MsnnStack msnn_fit(const data::Dataset& train_set,
                   const std::vector<nn::NetworkSpec>& stage_specs,
                   const std::vector<TrainConfig>& stage_configs);

double msnn_predict(const MsnnStack& stack, std::span<const double> x);

// RMS of combined-prediction residuals over a dataset.
double msnn_residual_rms(const MsnnStack& stack, const data::Dataset& ds);

}  // namespace cdf2pdf::train
