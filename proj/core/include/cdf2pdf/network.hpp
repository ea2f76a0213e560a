#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdf2pdf/activations.hpp"

namespace cdf2pdf::nn {

// Glorot-uniform weight draw, biases zero. kappa scales the first layer's
// weights after the draw (used by sine-first-layer stacks).
struct InitSpec {
  std::uint64_t seed = 0;
  double kappa = 1.0;
};

struct NetworkSpec {
  std::vector<int> widths;             // input, hidden..., output
  std::vector<Activation> hidden;      // one per hidden layer
  Activation output = Activation::sigmoid;
  InitSpec init;

  int input_width() const { return widths.front(); }
  int output_width() const { return widths.back(); }
  int hidden_layers() const { return static_cast<int>(hidden.size()); }

  void validate() const;  // throws ShapeError / DomainError

  // the common shape: `layers` hidden layers of `width` units, one output
  static NetworkSpec dense(int inputs, int layers, int width,
                           Activation hidden_act, Activation output_act,
                           InitSpec init = {});
};

struct Layer {
  int in = 0;
  int out = 0;
  Activation act = Activation::linear;
  std::vector<double> w;  // out x in, row-major
  std::vector<double> b;  // out
  double slope = kPreluInitSlope;  // learnable, PReLU only
};

// Dense feed-forward scalar-output network. All arithmetic is double
// precision. The optional input map x -> (x - in_shift)/in_scale is fixed
// (not trained) and defaults to the identity; it is stored with the model and
// input_grad chains through it, so derivatives are in original input units.
struct Network {
  NetworkSpec spec;
  std::vector<Layer> layers;
  std::vector<double> in_shift;  // size = input width
  std::vector<double> in_scale;

  std::size_t param_count() const;

  // scalar forward pass; x.size() must equal the input width
  double forward(std::span<const double> x) const;

  // exact d forward / d x[index] by tangent propagation alongside the
  // primal pass; no finite differencing anywhere
  double input_grad(std::span<const double> x, int index) const;
};

// deterministic: the same spec (seed included) yields the identical network
Network init_network(const NetworkSpec& spec);

}  // namespace cdf2pdf::nn
