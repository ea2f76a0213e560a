#include "cdf2pdf/msnn.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::train {

MsnnStack msnn_fit(const data::Dataset& train_set,
                   const std::vector<nn::NetworkSpec>& stage_specs,
                   const std::vector<TrainConfig>& stage_configs) {
  if (stage_specs.empty()) throw ShapeError("msnn_fit: no stages requested");
  if (stage_specs.size() != stage_configs.size()) {
    throw ShapeError("msnn_fit: one config per stage spec");
  }
  if (train_set.size() == 0) throw ShapeError("msnn_fit: empty training set");

  MsnnStack stack;
  data::Dataset working = train_set;  // target column is rewritten per stage

  for (std::size_t j = 0; j < stage_specs.size(); ++j) {
    double eps = 1.0;
    if (j > 0) {
      // residual of the combined stack so far, rescaled by its RMS
      double sq_sum = 0.0;
      std::vector<double> residual(train_set.size());
      for (std::size_t i = 0; i < train_set.size(); ++i) {
        const double x[3] = {train_set.theta1[i], train_set.theta2[i],
                             train_set.lambda[i]};
        residual[i] = train_set.target[i] - msnn_predict(stack, x);
        sq_sum += residual[i] * residual[i];
      }
      eps = std::sqrt(sq_sum / static_cast<double>(train_set.size()));
      if (eps == 0.0) {
        stack.truncated = true;
        stack.notice = "stage " + std::to_string(j) +
                       " skipped: residual RMS is exactly zero";
        break;
      }
      for (std::size_t i = 0; i < train_set.size(); ++i) {
        working.target[i] = residual[i] / eps;
      }
    }
    const TrainResult r =
        train_regressor(working, working, stage_specs[j], stage_configs[j]);
    stack.stages.push_back(r.net);
    stack.scales.push_back(j == 0 ? 1.0 : eps);
  }
  return stack;
}

double msnn_predict(const MsnnStack& stack, std::span<const double> x) {
  if (stack.stages.empty()) throw ShapeError("msnn_predict: empty stack");
  double sum = 0.0;
  for (std::size_t j = 0; j < stack.stages.size(); ++j) {
    sum += stack.scales[j] * stack.stages[j].forward(x);
  }
  return sum;
}

double msnn_residual_rms(const MsnnStack& stack, const data::Dataset& ds) {
  if (ds.size() == 0) throw ShapeError("msnn_residual_rms: empty dataset");
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double x[3] = {ds.theta1[i], ds.theta2[i], ds.lambda[i]};
    const double r = ds.target[i] - msnn_predict(stack, x);
    sq_sum += r * r;
  }
  return std::sqrt(sq_sum / static_cast<double>(ds.size()));
}

}  // namespace cdf2pdf::train
