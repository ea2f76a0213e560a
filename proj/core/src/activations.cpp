#include "cdf2pdf/activations.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::nn {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double activation_eval(Activation kind, double x, double slope) {
  switch (kind) {
    case Activation::linear:
      return x;
    case Activation::relu:
      return x >= 0.0 ? x : 0.0;
    case Activation::leaky_relu:
      return x >= 0.0 ? x : kLeakySlope * x;
    case Activation::prelu:
      return x >= 0.0 ? x : slope * x;
    case Activation::selu:
      return x >= 0.0 ? kSeluScale * x : kSeluScale * kSeluAlpha * std::expm1(x);
    case Activation::silu:
      return x * sigmoid(x);
    case Activation::tanh:
      return std::tanh(x);
    case Activation::sigmoid:
      return sigmoid(x);
    case Activation::sine:
      return std::sin(x);
  }
  throw DomainError("activation_eval: unsupported activation kind");
}

double activation_deriv(Activation kind, double x, double slope) {
  switch (kind) {
    case Activation::linear:
      return 1.0;
    case Activation::relu:
      return x >= 0.0 ? 1.0 : 0.0;
    case Activation::leaky_relu:
      return x >= 0.0 ? 1.0 : kLeakySlope;
    case Activation::prelu:
      return x >= 0.0 ? 1.0 : slope;
    case Activation::selu:
      return x >= 0.0 ? kSeluScale : kSeluScale * kSeluAlpha * std::exp(x);
    case Activation::silu: {
      const double s = sigmoid(x);
      return s * (1.0 + x * (1.0 - s));
    }
    case Activation::tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::sigmoid: {
      const double s = sigmoid(x);
      return s * (1.0 - s);
    }
    case Activation::sine:
      return std::cos(x);
  }
  throw DomainError("activation_deriv: unsupported activation kind");
}

double activation_param_deriv(Activation kind, double x, double /*slope*/) {
  if (kind != Activation::prelu) return 0.0;
  return x >= 0.0 ? 0.0 : x;
}

bool activation_has_param(Activation kind) { return kind == Activation::prelu; }

std::string activation_name(Activation kind) {
  switch (kind) {
    case Activation::linear: return "linear";
    case Activation::relu: return "relu";
    case Activation::leaky_relu: return "leaky_relu";
    case Activation::prelu: return "prelu";
    case Activation::selu: return "selu";
    case Activation::silu: return "silu";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
    case Activation::sine: return "sine";
  }
  throw DomainError("activation_name: unsupported activation kind");
}

Activation activation_from_name(std::string_view name) {
  if (name == "linear") return Activation::linear;
  if (name == "relu") return Activation::relu;
  if (name == "leaky_relu") return Activation::leaky_relu;
  if (name == "prelu") return Activation::prelu;
  if (name == "selu") return Activation::selu;
  if (name == "silu") return Activation::silu;
  if (name == "tanh") return Activation::tanh;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "sine") return Activation::sine;
  throw ParseError("unknown activation: " + std::string(name));
}

}  // namespace cdf2pdf::nn
