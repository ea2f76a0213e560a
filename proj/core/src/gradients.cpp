#include "cdf2pdf/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::nn {

GradientSet GradientSet::zeros_like(const Network& net) {
  GradientSet g;
  g.layers.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    g.layers[l].w.assign(net.layers[l].w.size(), 0.0);
    g.layers[l].b.assign(net.layers[l].b.size(), 0.0);
    g.layers[l].slope = 0.0;
  }
  return g;
}

void GradientSet::set_zero() {
  for (LayerGrad& l : layers) {
    std::fill(l.w.begin(), l.w.end(), 0.0);
    std::fill(l.b.begin(), l.b.end(), 0.0);
    l.slope = 0.0;
  }
}

void GradientSet::scale(double s) {
  for (LayerGrad& l : layers) {
    for (double& v : l.w) v *= s;
    for (double& v : l.b) v *= s;
    l.slope *= s;
  }
}

void GradWorkspace::prepare(const Network& net) {
  const std::size_t key = net.layers.size() * 1000003u +
                          static_cast<std::size_t>(net.spec.input_width()) +
                          net.param_count() * 31u;
  if (key == sized_for_) return;
  sized_for_ = key;
  a0.assign(kChunk * static_cast<std::size_t>(net.spec.input_width()), 0.0);
  z.assign(net.layers.size(), {});
  a.assign(net.layers.size(), {});
  delta.assign(net.layers.size(), {});
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const std::size_t n = kChunk * static_cast<std::size_t>(net.layers[l].out);
    z[l].assign(n, 0.0);
    a[l].assign(n, 0.0);
    delta[l].assign(n, 0.0);
  }
}

namespace {

void check_batch(const Network& net, const Batch& batch) {
  if (batch.width != net.spec.input_width()) {
    throw ShapeError("batch width does not match network input width");
  }
  if (batch.x.size() != batch.size() * static_cast<std::size_t>(batch.width)) {
    throw ShapeError("batch feature array size mismatch");
  }
  if (net.spec.output_width() != 1) {
    throw ShapeError("training expects scalar-output networks");
  }
}

// forward one chunk, filling ws.z and ws.a; returns nothing, loss handled by
// callers. `m` is the chunk size.
void forward_chunk(const Network& net, const Batch& batch, std::size_t start,
                   std::size_t m, GradWorkspace& ws) {
  const int in_w = batch.width;
  for (std::size_t e = 0; e < m; ++e) {
    const double* xr = batch.x.data() + (start + e) * static_cast<std::size_t>(in_w);
    double* ar = ws.a0.data() + e * static_cast<std::size_t>(in_w);
    for (int i = 0; i < in_w; ++i) {
      ar[i] = (xr[i] - net.in_shift[static_cast<std::size_t>(i)]) /
              net.in_scale[static_cast<std::size_t>(i)];
    }
  }
  const double* prev = ws.a0.data();
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    double* zl = ws.z[l].data();
    double* al = ws.a[l].data();
    for (std::size_t e = 0; e < m; ++e) {
      const double* ap = prev + e * static_cast<std::size_t>(layer.in);
      double* zr = zl + e * static_cast<std::size_t>(layer.out);
      for (int o = 0; o < layer.out; ++o) {
        const double* wr = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
        double s = layer.b[static_cast<std::size_t>(o)];
        for (int i = 0; i < layer.in; ++i) s += wr[i] * ap[i];
        zr[o] = s;
      }
    }
    const std::size_t n = m * static_cast<std::size_t>(layer.out);
    for (std::size_t k = 0; k < n; ++k) {
      al[k] = activation_eval(layer.act, zl[k], layer.slope);
    }
    prev = al;
  }
}

}  // namespace

double grad_params(const Network& net, const Batch& batch, const Loss& loss,
                   GradientSet& out, GradWorkspace& ws) {
  check_batch(net, batch);
  if (batch.size() == 0) throw ShapeError("grad_params: empty batch");
  ws.prepare(net);
  if (out.layers.size() != net.layers.size()) out = GradientSet::zeros_like(net);
  out.set_zero();

  const std::size_t n = batch.size();
  const std::size_t last = net.layers.size() - 1;
  double loss_sum = 0.0;

  for (std::size_t start = 0; start < n; start += GradWorkspace::kChunk) {
    const std::size_t m = std::min(GradWorkspace::kChunk, n - start);
    forward_chunk(net, batch, start, m, ws);

    // output delta from the loss derivative
    {
      const Layer& layer = net.layers[last];
      double* dl = ws.delta[last].data();
      const double* zl = ws.z[last].data();
      const double* al = ws.a[last].data();
      const bool has_param = activation_has_param(layer.act);
      double slope_sum = 0.0;
      for (std::size_t e = 0; e < m; ++e) {
        const double pred = al[e];
        const double target = batch.y[start + e];
        const double lv = loss_eval(loss, pred, target);
        if (!std::isfinite(lv)) {
          throw NumericError("grad_params: non-finite loss",
                             static_cast<long>(last));
        }
        loss_sum += lv;
        const double dlda = loss_deriv(loss, pred, target);
        // the slope gradient needs d loss / d activation, before the
        // activation derivative is folded into delta
        if (has_param) {
          slope_sum +=
              dlda * activation_param_deriv(layer.act, zl[e], layer.slope);
        }
        dl[e] = dlda * activation_deriv(layer.act, zl[e], layer.slope);
      }
      if (has_param) out.layers[last].slope += slope_sum;
    }

    for (std::size_t li = net.layers.size(); li-- > 0;) {
      const Layer& layer = net.layers[li];
      GradientSet::LayerGrad& g = out.layers[li];
      const double* dl = ws.delta[li].data();
      const double* ap = li == 0 ? ws.a0.data() : ws.a[li - 1].data();

      for (std::size_t e = 0; e < m; ++e) {
        const double* ar = ap + e * static_cast<std::size_t>(layer.in);
        const double* dr = dl + e * static_cast<std::size_t>(layer.out);
        for (int o = 0; o < layer.out; ++o) {
          const double d = dr[o];
          double* gw = g.w.data() + static_cast<std::size_t>(o) * layer.in;
          for (int i = 0; i < layer.in; ++i) gw[i] += d * ar[i];
          g.b[static_cast<std::size_t>(o)] += d;
        }
      }
      if (li > 0) {
        const Layer& below = net.layers[li - 1];
        const bool below_param = activation_has_param(below.act);
        double slope_sum = 0.0;
        double* dp = ws.delta[li - 1].data();
        const double* zp = ws.z[li - 1].data();
        for (std::size_t e = 0; e < m; ++e) {
          const double* dr = dl + e * static_cast<std::size_t>(layer.out);
          double* dpr = dp + e * static_cast<std::size_t>(layer.in);
          std::memset(dpr, 0, sizeof(double) * static_cast<std::size_t>(layer.in));
          for (int o = 0; o < layer.out; ++o) {
            const double d = dr[o];
            const double* wr = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i) dpr[i] += d * wr[i];
          }
          const double* zpr = zp + e * static_cast<std::size_t>(layer.in);
          // same ordering as the output layer: slope picks up dpr while it
          // is still d loss / d activation
          if (below_param) {
            for (int i = 0; i < layer.in; ++i) {
              slope_sum += dpr[i] * activation_param_deriv(below.act, zpr[i],
                                                           below.slope);
            }
          }
          for (int i = 0; i < layer.in; ++i) {
            dpr[i] *= activation_deriv(below.act, zpr[i], below.slope);
          }
        }
        if (below_param) out.layers[li - 1].slope += slope_sum;
      }
    }
  }

  out.scale(1.0 / static_cast<double>(n));
  return loss_sum / static_cast<double>(n);
}

double batch_loss(const Network& net, const Batch& batch, const Loss& loss,
                  GradWorkspace& ws) {
  check_batch(net, batch);
  if (batch.size() == 0) throw ShapeError("batch_loss: empty batch");
  ws.prepare(net);
  const std::size_t n = batch.size();
  const std::size_t last = net.layers.size() - 1;
  double loss_sum = 0.0;
  for (std::size_t start = 0; start < n; start += GradWorkspace::kChunk) {
    const std::size_t m = std::min(GradWorkspace::kChunk, n - start);
    forward_chunk(net, batch, start, m, ws);
    const double* al = ws.a[last].data();
    for (std::size_t e = 0; e < m; ++e) {
      const double lv = loss_eval(loss, al[e], batch.y[start + e]);
      if (!std::isfinite(lv)) {
        throw NumericError("batch_loss: non-finite loss", static_cast<long>(last));
      }
      loss_sum += lv;
    }
  }
  return loss_sum / static_cast<double>(n);
}

}  // namespace cdf2pdf::nn
