#include "cdf2pdf/loss.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::nn {

double loss_eval(const Loss& loss, double pred, double target) {
  const double r = pred - target;
  switch (loss.kind) {
    case LossKind::mse:
      return r * r;
    case LossKind::huber: {
      const double d = loss.huber_delta;
      const double a = std::fabs(r);
      return a <= d ? 0.5 * r * r : d * (a - 0.5 * d);
    }
  }
  throw DomainError("loss_eval: unsupported loss kind");
}

double loss_deriv(const Loss& loss, double pred, double target) {
  const double r = pred - target;
  switch (loss.kind) {
    case LossKind::mse:
      return 2.0 * r;
    case LossKind::huber: {
      const double d = loss.huber_delta;
      if (std::fabs(r) <= d) return r;
      return r > 0.0 ? d : -d;
    }
  }
  throw DomainError("loss_deriv: unsupported loss kind");
}

std::string loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::mse: return "mse";
    case LossKind::huber: return "huber";
  }
  throw DomainError("loss_name: unsupported loss kind");
}

LossKind loss_from_name(std::string_view name) {
  if (name == "mse") return LossKind::mse;
  if (name == "huber") return LossKind::huber;
  throw ParseError("unknown loss: " + std::string(name));
}

}  // namespace cdf2pdf::nn
