#include "cdf2pdf/network.hpp"

#include <cmath>
#include <string>

#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/rng.hpp"

namespace cdf2pdf::nn {

void NetworkSpec::validate() const {
  if (widths.size() < 3) {
    throw ShapeError("network spec: need input, at least one hidden, output");
  }
  for (const int w : widths) {
    if (w < 1) throw ShapeError("network spec: widths must be >= 1");
  }
  if (hidden.size() + 2 != widths.size()) {
    throw ShapeError("network spec: one hidden activation per hidden layer");
  }
  if (!(init.kappa > 0.0)) {
    throw DomainError("network spec: init kappa must be > 0");
  }
}

NetworkSpec NetworkSpec::dense(int inputs, int layers, int width,
                               Activation hidden_act, Activation output_act,
                               InitSpec init) {
  NetworkSpec s;
  s.widths.push_back(inputs);
  for (int i = 0; i < layers; ++i) s.widths.push_back(width);
  s.widths.push_back(1);
  s.hidden.assign(static_cast<std::size_t>(layers), hidden_act);
  s.output = output_act;
  s.init = init;
  s.validate();
  return s;
}

std::size_t Network::param_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) {
    n += l.w.size() + l.b.size();
    if (activation_has_param(l.act)) ++n;
  }
  return n;
}

Network init_network(const NetworkSpec& spec) {
  spec.validate();
  Network net;
  net.spec = spec;
  net.in_shift.assign(static_cast<std::size_t>(spec.input_width()), 0.0);
  net.in_scale.assign(static_cast<std::size_t>(spec.input_width()), 1.0);
  RngStream rng(spec.init.seed);
  const std::size_t n_layers = spec.widths.size() - 1;
  net.layers.resize(n_layers);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Layer& layer = net.layers[l];
    layer.in = spec.widths[l];
    layer.out = spec.widths[l + 1];
    layer.act = l + 1 == n_layers ? spec.output : spec.hidden[l];
    layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
    layer.b.assign(static_cast<std::size_t>(layer.out), 0.0);
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    const double scale = l == 0 ? spec.init.kappa : 1.0;
    for (double& w : layer.w) w = scale * rng.uniform(-limit, limit);
  }
  return net;
}

namespace {

void check_input(const Network& net, std::span<const double> x) {
  if (static_cast<int>(x.size()) != net.spec.input_width()) {
    throw ShapeError("forward: input size " + std::to_string(x.size()) +
                     " does not match network input width " +
                     std::to_string(net.spec.input_width()));
  }
}

}  // namespace

double Network::forward(std::span<const double> x) const {
  check_input(*this, x);
  std::vector<double> a(x.size()), next;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a[i] = (x[i] - in_shift[i]) / in_scale[i];
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    next.assign(static_cast<std::size_t>(layer.out), 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double* wr = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      double z = layer.b[static_cast<std::size_t>(o)];
      for (int i = 0; i < layer.in; ++i) z += wr[i] * a[static_cast<std::size_t>(i)];
      if (!std::isfinite(z)) {
        throw NumericError("forward: non-finite pre-activation", static_cast<long>(l));
      }
      next[static_cast<std::size_t>(o)] = activation_eval(layer.act, z, layer.slope);
    }
    a.swap(next);
  }
  return a[0];
}

double Network::input_grad(std::span<const double> x, int index) const {
  check_input(*this, x);
  if (index < 0 || index >= spec.input_width()) {
    throw ShapeError("input_grad: index out of range");
  }
  std::vector<double> a(x.size()), t(x.size(), 0.0), na, nt;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a[i] = (x[i] - in_shift[i]) / in_scale[i];
  }
  t[static_cast<std::size_t>(index)] = 1.0 / in_scale[static_cast<std::size_t>(index)];
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    na.assign(static_cast<std::size_t>(layer.out), 0.0);
    nt.assign(static_cast<std::size_t>(layer.out), 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double* wr = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      double z = layer.b[static_cast<std::size_t>(o)];
      double tz = 0.0;
      for (int i = 0; i < layer.in; ++i) {
        z += wr[i] * a[static_cast<std::size_t>(i)];
        tz += wr[i] * t[static_cast<std::size_t>(i)];
      }
      if (!std::isfinite(z) || !std::isfinite(tz)) {
        throw NumericError("input_grad: non-finite value", static_cast<long>(l));
      }
      na[static_cast<std::size_t>(o)] = activation_eval(layer.act, z, layer.slope);
      nt[static_cast<std::size_t>(o)] = activation_deriv(layer.act, z, layer.slope) * tz;
    }
    a.swap(na);
    t.swap(nt);
  }
  return t[0];
}

}  // namespace cdf2pdf::nn
