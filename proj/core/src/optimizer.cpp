#include "cdf2pdf/optimizer.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::nn {

OptimizerState OptimizerState::create(const OptimizerConfig& cfg,
                                      const Network& net) {
  OptimizerState s;
  s.cfg = cfg;
  s.step = 0;
  s.m = GradientSet::zeros_like(net);
  s.v = GradientSet::zeros_like(net);
  return s;
}

namespace {

void check_finite(const GradientSet& g) {
  for (std::size_t l = 0; l < g.layers.size(); ++l) {
    for (const double v : g.layers[l].w) {
      if (!std::isfinite(v)) {
        throw NumericError("optimizer_step: non-finite weight gradient",
                           static_cast<long>(l));
      }
    }
    for (const double v : g.layers[l].b) {
      if (!std::isfinite(v)) {
        throw NumericError("optimizer_step: non-finite bias gradient",
                           static_cast<long>(l));
      }
    }
    if (!std::isfinite(g.layers[l].slope)) {
      throw NumericError("optimizer_step: non-finite slope gradient",
                         static_cast<long>(l));
    }
  }
}

template <typename Rule>
void apply_rule(OptimizerState& s, Network& net, const GradientSet& g,
                Rule rule) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    Layer& layer = net.layers[l];
    const GradientSet::LayerGrad& gl = g.layers[l];
    GradientSet::LayerGrad& ml = s.m.layers[l];
    GradientSet::LayerGrad& vl = s.v.layers[l];
    for (std::size_t i = 0; i < layer.w.size(); ++i) {
      rule(layer.w[i], gl.w[i], ml.w[i], vl.w[i]);
    }
    for (std::size_t i = 0; i < layer.b.size(); ++i) {
      rule(layer.b[i], gl.b[i], ml.b[i], vl.b[i]);
    }
    if (activation_has_param(layer.act)) {
      rule(layer.slope, gl.slope, ml.slope, vl.slope);
    }
  }
}

}  // namespace

void optimizer_step(OptimizerState& s, Network& net, const GradientSet& g) {
  if (g.layers.size() != net.layers.size()) {
    throw ShapeError("optimizer_step: gradient/network layer mismatch");
  }
  check_finite(g);
  const OptimizerConfig& c = s.cfg;
  const long t = s.step + 1;

  switch (c.kind) {
    case OptimizerKind::sgd:
      apply_rule(s, net, g,
                 [&](double& p, double gv, double&, double&) { p -= c.lr * gv; });
      break;
    case OptimizerKind::adam: {
      const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(t));
      const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(t));
      apply_rule(s, net, g, [&](double& p, double gv, double& m, double& v) {
        m = c.beta1 * m + (1.0 - c.beta1) * gv;
        v = c.beta2 * v + (1.0 - c.beta2) * gv * gv;
        p -= c.lr * (m / bc1) / (std::sqrt(v / bc2) + c.eps);
      });
      break;
    }
    case OptimizerKind::nadam: {
      // Nesterov momentum folded into the Adam update: the lookahead first
      // moment blends the bias-corrected moment with the current gradient.
      const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(t));
      const double bc1_next = 1.0 - std::pow(c.beta1, static_cast<double>(t + 1));
      const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(t));
      apply_rule(s, net, g, [&](double& p, double gv, double& m, double& v) {
        m = c.beta1 * m + (1.0 - c.beta1) * gv;
        v = c.beta2 * v + (1.0 - c.beta2) * gv * gv;
        const double lookahead =
            c.beta1 * m / bc1_next + (1.0 - c.beta1) * gv / bc1;
        p -= c.lr * lookahead / (std::sqrt(v / bc2) + c.eps);
      });
      break;
    }
    case OptimizerKind::rmsprop:
      apply_rule(s, net, g, [&](double& p, double gv, double&, double& v) {
        v = c.rho * v + (1.0 - c.rho) * gv * gv;
        p -= c.lr * gv / (std::sqrt(v) + c.eps);
      });
      break;
  }
  s.step = t;
}

std::string optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::sgd: return "sgd";
    case OptimizerKind::adam: return "adam";
    case OptimizerKind::nadam: return "nadam";
    case OptimizerKind::rmsprop: return "rmsprop";
  }
  throw DomainError("optimizer_name: unsupported kind");
}

OptimizerKind optimizer_from_name(std::string_view name) {
  if (name == "sgd") return OptimizerKind::sgd;
  if (name == "adam") return OptimizerKind::adam;
  if (name == "nadam") return OptimizerKind::nadam;
  if (name == "rmsprop") return OptimizerKind::rmsprop;
  throw ParseError("unknown optimizer: " + std::string(name));
}

}  // namespace cdf2pdf::nn
