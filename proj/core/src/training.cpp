#include "cdf2pdf/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/rng.hpp"

namespace cdf2pdf::train {

using nn::Batch;
using nn::GradientSet;
using nn::GradWorkspace;
using nn::Network;

long iterations_for_epochs(std::size_t n, long batch, long epochs) {
  if (batch < 1) throw DomainError("iterations_for_epochs: batch must be >= 1");
  const long per_epoch = static_cast<long>(
      (n + static_cast<std::size_t>(batch) - 1) / static_cast<std::size_t>(batch));
  return per_epoch * epochs;
}

namespace {

// population mean/standard deviation per feature column
void fit_input_map(const std::vector<double>& x, std::size_t n, int width,
                   std::vector<double>& shift, std::vector<double>& scale) {
  shift.assign(static_cast<std::size_t>(width), 0.0);
  scale.assign(static_cast<std::size_t>(width), 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < width; ++c) {
      shift[static_cast<std::size_t>(c)] += x[i * static_cast<std::size_t>(width) +
                                              static_cast<std::size_t>(c)];
    }
  }
  for (int c = 0; c < width; ++c) shift[static_cast<std::size_t>(c)] /= static_cast<double>(n);
  std::vector<double> var(static_cast<std::size_t>(width), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < width; ++c) {
      const double d = x[i * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] -
                       shift[static_cast<std::size_t>(c)];
      var[static_cast<std::size_t>(c)] += d * d;
    }
  }
  for (int c = 0; c < width; ++c) {
    const double sd = std::sqrt(var[static_cast<std::size_t>(c)] / static_cast<double>(n));
    scale[static_cast<std::size_t>(c)] = sd > 1e-12 ? sd : 1.0;
  }
}

}  // namespace

TrainResult train_regressor(const data::Dataset& train_set,
                            const data::Dataset& val_set,
                            const nn::NetworkSpec& spec,
                            const TrainConfig& config) {
  if (train_set.size() == 0) throw ShapeError("train_regressor: empty training set");
  if (val_set.size() == 0) throw ShapeError("train_regressor: empty validation set");
  if (config.batch < 1) throw DomainError("train_regressor: batch must be >= 1");
  if (config.iterations < 1) throw DomainError("train_regressor: iterations must be >= 1");
  if (config.val_every < 1) throw DomainError("train_regressor: cadence must be >= 1");
  spec.validate();
  if (spec.input_width() != 3) {
    throw ShapeError("train_regressor: expects (theta1, theta2, lambda) features");
  }

  const std::size_t n = train_set.size();
  const std::vector<double> x_train = train_set.feature_matrix();
  const std::vector<double> x_val = val_set.feature_matrix();
  const Batch val_batch{x_val, val_set.target, 3};

  Network net = nn::init_network(spec);
  if (config.standardize) {
    fit_input_map(x_train, n, 3, net.in_shift, net.in_scale);
  }

  nn::OptimizerState opt = nn::OptimizerState::create(config.optimizer, net);
  GradWorkspace ws;
  GradientSet grads = GradientSet::zeros_like(net);

  const long batch = std::min<long>(config.batch, static_cast<long>(n));
  const long per_epoch = static_cast<long>(
      (n + static_cast<std::size_t>(batch) - 1) / static_cast<std::size_t>(batch));

  RngStream shuffle_rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  std::vector<double> bx(static_cast<std::size_t>(batch) * 3);
  std::vector<double> by(static_cast<std::size_t>(batch));

  TrainResult result;
  double initial_loss = -1.0;
  double running_sum = 0.0;
  long running_count = 0;
  double best_val = std::numeric_limits<double>::infinity();
  Network best_net = net;
  long best_iter = 0;

  for (long it = 0; it < config.iterations; ++it) {
    const long pos_in_epoch = it % per_epoch;
    if (pos_in_epoch == 0) {
      for (std::size_t k = n; k > 1; --k) {
        const std::size_t j = static_cast<std::size_t>(
            shuffle_rng.uniform_int(0, static_cast<long>(k) - 1));
        std::swap(order[k - 1], order[j]);
      }
    }
    const std::size_t start = static_cast<std::size_t>(pos_in_epoch) *
                              static_cast<std::size_t>(batch);
    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(batch), n - start);
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t src = order[start + e];
      bx[e * 3 + 0] = x_train[src * 3 + 0];
      bx[e * 3 + 1] = x_train[src * 3 + 1];
      bx[e * 3 + 2] = x_train[src * 3 + 2];
      by[e] = train_set.target[src];
    }
    const Batch b{{bx.data(), m * 3}, {by.data(), m}, 3};

    double train_loss;
    try {
      train_loss = nn::grad_params(net, b, config.loss, grads, ws);
    } catch (const NumericError& e) {
      throw DivergenceError("training aborted at iteration " + std::to_string(it) +
                                ": " + e.what(),
                            it);
    }
    if (initial_loss < 0.0) initial_loss = train_loss;
    running_sum += train_loss;
    ++running_count;

    nn::optimizer_step(opt, net, grads);

    const bool at_cadence = (it + 1) % config.val_every == 0;
    const bool at_end = it + 1 == config.iterations;
    if (at_cadence || at_end) {
      const double mean_train = running_sum / static_cast<double>(running_count);
      running_sum = 0.0;
      running_count = 0;
      double val_loss;
      try {
        val_loss = nn::batch_loss(net, val_batch, config.loss, ws);
      } catch (const NumericError& e) {
        throw DivergenceError("validation aborted at iteration " +
                                  std::to_string(it + 1) + ": " + e.what(),
                              it + 1);
      }
      result.curve.iteration.push_back(it + 1);
      result.curve.train_loss.push_back(mean_train);
      result.curve.val_loss.push_back(val_loss);
      if (val_loss < best_val) {
        best_val = val_loss;
        best_net = net;
        best_iter = it + 1;
      }
      if (!std::isfinite(mean_train) ||
          (initial_loss > 0.0 &&
           mean_train > config.divergence_factor * initial_loss)) {
        throw DivergenceError("training diverged at iteration " +
                                  std::to_string(it + 1) + " (loss " +
                                  std::to_string(mean_train) + " vs initial " +
                                  std::to_string(initial_loss) + ")",
                              it + 1);
      }
      if (at_end) break;  // the curve records the final iteration once
    }
  }

  result.net = std::move(best_net);
  result.best_val_loss = best_val;
  result.best_iteration = best_iter;
  return result;
}

}  // namespace cdf2pdf::train
