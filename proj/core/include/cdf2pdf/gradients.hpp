#pragma once

#include <span>
#include <vector>

#include "cdf2pdf/loss.hpp"
#include "cdf2pdf/network.hpp"

namespace cdf2pdf::nn {

// Parameter gradients shaped like a network's parameters.
struct GradientSet {
  struct LayerGrad {
    std::vector<double> w;
    std::vector<double> b;
    double slope = 0.0;  // PReLU slope gradient, 0 for other kinds
  };
  std::vector<LayerGrad> layers;

  static GradientSet zeros_like(const Network& net);
  void set_zero();
  void scale(double s);
};

// A batch view over row-major features and targets.
struct Batch {
  std::span<const double> x;  // size() == size * width
  std::span<const double> y;
  int width = 0;
  std::size_t size() const { return y.size(); }
};

// Reusable buffers for batched passes. Examples are processed in fixed-size
// chunks so activations stay cache-resident regardless of batch size.
class GradWorkspace {
 public:
  static constexpr std::size_t kChunk = 128;
  std::vector<double> a0;
  std::vector<std::vector<double>> z;      // per layer, chunk x out
  std::vector<std::vector<double>> a;      // per layer, chunk x out
  std::vector<std::vector<double>> delta;  // per layer, chunk x out
  void prepare(const Network& net);

 private:
  std::size_t sized_for_ = 0;
};

// Mean loss over the batch; gradients of that mean are written to `out`
// (overwritten, not accumulated). The batch gradient equals the mean of the
// per-example gradients.
double grad_params(const Network& net, const Batch& batch, const Loss& loss,
                   GradientSet& out, GradWorkspace& ws);

// Forward-only mean loss.
double batch_loss(const Network& net, const Batch& batch, const Loss& loss,
                  GradWorkspace& ws);

}  // namespace cdf2pdf::nn
