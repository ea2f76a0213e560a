#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/network.hpp"

namespace cdf2pdf::uq {

// Split conformal calibration from absolute-residual scores. The radius is
// the ceil((n+1)(1-alpha))-th smallest score; when that rank exceeds n the
// finite-sample guarantee needs an infinite band, so the radius falls back to
// the maximum score with at_max set (callers should surface a warning).
struct ConformalCalibration {
  std::vector<double> scores;  // sorted ascending
  double alpha = 0.0;
  double q_hat = 0.0;
  bool at_max = false;
};

ConformalCalibration conformal_calibrate(std::vector<double> scores,
                                         double alpha);

// Scores |prediction - target| of a CDF model over a calibration set.
ConformalCalibration conformal_calibrate(const nn::Network& net,
                                         const data::Dataset& calib_set,
                                         double alpha);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// [pred - q_hat, pred + q_hat], intersected with the clamp when given.
// Unclamped the width is exactly 2 * q_hat.
Interval conformal_band(double pred, const ConformalCalibration& calib,
                        std::optional<std::pair<double, double>> clamp = {});

// Fraction of fresh targets inside the unclamped band around the model
// prediction; the marginal coverage estimate.
double coverage_check(const nn::Network& net, const ConformalCalibration& calib,
                      const data::Dataset& fresh_set);

// Same, from precomputed fresh scores.
double coverage_fraction(std::span<const double> fresh_scores, double q_hat);

}  // namespace cdf2pdf::uq
