#pragma once

#include <string>
#include <string_view>

namespace cdf2pdf::nn {

enum class LossKind { mse, huber };

struct Loss {
  LossKind kind = LossKind::mse;
  double huber_delta = 0.7;
};

// Squared error carries no 1/2 factor; the Huber quadratic branch does
// (r^2/2 for |r| <= delta, delta*(|r| - delta/2) beyond). Both conventions
// are pinned by tests.
double loss_eval(const Loss& loss, double pred, double target);

// derivative with respect to the prediction
double loss_deriv(const Loss& loss, double pred, double target);

std::string loss_name(LossKind kind);
LossKind loss_from_name(std::string_view name);  // throws ParseError

}  // namespace cdf2pdf::nn
