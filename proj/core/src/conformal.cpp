#include "cdf2pdf/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/pdf_curve.hpp"

namespace cdf2pdf::uq {

ConformalCalibration conformal_calibrate(std::vector<double> scores,
                                         double alpha) {
  if (scores.empty()) throw ShapeError("conformal_calibrate: no scores");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("conformal_calibrate: alpha must be in (0, 1)");
  }
  for (const double s : scores) {
    if (!(s >= 0.0)) throw DomainError("conformal_calibrate: negative score");
  }
  std::sort(scores.begin(), scores.end());
  const std::size_t n = scores.size();
  const double raw = static_cast<double>(n + 1) * (1.0 - alpha);
  std::size_t rank = static_cast<std::size_t>(std::ceil(raw - 1e-12));
  if (rank < 1) rank = 1;

  ConformalCalibration out;
  out.alpha = alpha;
  if (rank > n) {
    out.q_hat = scores.back();
    out.at_max = true;
  } else {
    out.q_hat = scores[rank - 1];
  }
  out.scores = std::move(scores);
  return out;
}

ConformalCalibration conformal_calibrate(const nn::Network& net,
                                         const data::Dataset& calib_set,
                                         double alpha) {
  if (calib_set.size() == 0) throw ShapeError("conformal_calibrate: empty calibration set");
  std::vector<double> scores(calib_set.size());
  for (std::size_t i = 0; i < calib_set.size(); ++i) {
    const double pred = cdf_eval(net, {calib_set.theta1[i], calib_set.theta2[i]},
                                 calib_set.lambda[i]);
    scores[i] = std::fabs(pred - calib_set.target[i]);
  }
  return conformal_calibrate(std::move(scores), alpha);
}

Interval conformal_band(double pred, const ConformalCalibration& calib,
                        std::optional<std::pair<double, double>> clamp) {
  Interval band{pred - calib.q_hat, pred + calib.q_hat};
  if (clamp) {
    band.lo = std::max(band.lo, clamp->first);
    band.hi = std::min(band.hi, clamp->second);
  }
  return band;
}

double coverage_check(const nn::Network& net, const ConformalCalibration& calib,
                      const data::Dataset& fresh_set) {
  if (fresh_set.size() == 0) throw ShapeError("coverage_check: empty fresh set");
  std::size_t inside = 0;
  for (std::size_t i = 0; i < fresh_set.size(); ++i) {
    const double pred = cdf_eval(net, {fresh_set.theta1[i], fresh_set.theta2[i]},
                                 fresh_set.lambda[i]);
    if (std::fabs(pred - fresh_set.target[i]) <= calib.q_hat) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(fresh_set.size());
}

double coverage_fraction(std::span<const double> fresh_scores, double q_hat) {
  if (fresh_scores.empty()) throw ShapeError("coverage_fraction: no scores");
  std::size_t inside = 0;
  for (const double s : fresh_scores) {
    if (s <= q_hat) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(fresh_scores.size());
}

}  // namespace cdf2pdf::uq
