#pragma once

#include <string>
#include <string_view>

namespace cdf2pdf::nn {

enum class Activation {
  linear,
  relu,
  leaky_relu,  // fixed negative slope 0.01
  prelu,       // learnable negative slope, one per layer
  selu,
  silu,
  tanh,
  sigmoid,
  sine,
};

// slope is the PReLU negative-region slope; ignored by the other kinds.
// At kinks (x = 0) the derivative takes its right-hand value.
double activation_eval(Activation kind, double x, double slope = 0.0);
double activation_deriv(Activation kind, double x, double slope = 0.0);

// derivative with respect to the learnable slope; zero for non-PReLU kinds
double activation_param_deriv(Activation kind, double x, double slope = 0.0);

bool activation_has_param(Activation kind);

// stable logistic, exposed because losses and tests want it too
double sigmoid(double x);

std::string activation_name(Activation kind);
Activation activation_from_name(std::string_view name);  // throws ParseError

inline constexpr double kLeakySlope = 0.01;
inline constexpr double kPreluInitSlope = 0.25;
inline constexpr double kSeluAlpha = 1.6732632423543772848170429916717;
inline constexpr double kSeluScale = 1.0507009873554804934193349852946;

}  // namespace cdf2pdf::nn
