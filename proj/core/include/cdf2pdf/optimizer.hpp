#pragma once

#include <string>
#include <string_view>

#include "cdf2pdf/gradients.hpp"
#include "cdf2pdf/network.hpp"

namespace cdf2pdf::nn {

enum class OptimizerKind { sgd, adam, nadam, rmsprop };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::adam;
  double lr = 1e-3;
  double beta1 = 0.9;    // adam / nadam first moment
  double beta2 = 0.999;  // adam / nadam second moment
  double eps = 1e-8;
  double rho = 0.99;     // rmsprop decay
};

struct OptimizerState {
  OptimizerConfig cfg;
  long step = 0;         // completed steps
  GradientSet m;         // first moment (adam, nadam)
  GradientSet v;         // second moment (adam, nadam, rmsprop)

  static OptimizerState create(const OptimizerConfig& cfg, const Network& net);
};

// One update, in place. Rejects non-finite gradients with NumericError and
// leaves the network untouched in that case.
void optimizer_step(OptimizerState& state, Network& net, const GradientSet& g);

std::string optimizer_name(OptimizerKind kind);
OptimizerKind optimizer_from_name(std::string_view name);  // throws ParseError

}  // namespace cdf2pdf::nn
