#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdf2pdf/conformal.hpp"
#include "cdf2pdf/network.hpp"

namespace cdf2pdf::uq {

struct ThetaPoint {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

// Model CDF at (theta, lambda).
double cdf_eval(const nn::Network& net, const ThetaPoint& theta, double lambda);

// Model density at (theta, lambda): the exact derivative of the model CDF
// with respect to lambda, obtained by tangent propagation through the
// network. Can be negative where the fitted CDF is locally decreasing; that
// rate is worth reporting alongside any curve.
double pdf_eval(const nn::Network& net, const ThetaPoint& theta, double lambda);

struct PdfCurve {
  ThetaPoint theta;
  std::vector<double> lambda;
  std::vector<double> F_hat;
  std::vector<double> f_hat;
  std::vector<double> band_lo;  // empty until a band is attached
  std::vector<double> band_hi;
  std::string band_target;      // "cdf" | "pdf" when banded
  double alpha = 0.0;           // band miscoverage when banded
  double q_hat = 0.0;
  // fraction of grid points where the derived density is negative
  double monotonicity_violation_rate = 0.0;

  bool has_band() const { return !band_lo.empty(); }
};

PdfCurve build_pdf_curve(const nn::Network& net, const ThetaPoint& theta,
                         std::span<const double> lambda_grid);

// Attach a conformal band to the F column (clamped to [0,1]) or to the f
// column (clamped below at 0).
void attach_cdf_band(PdfCurve& curve, const ConformalCalibration& calib);
void attach_pdf_band(PdfCurve& curve, const ConformalCalibration& calib);

// CSV schema lambda,F_hat,f_hat,band_lo,band_hi with a JSON sidecar at
// <path>.meta.json recording theta, alpha, band target and radius. Curves
// without a band write zero-width band columns mirroring F_hat, and the
// sidecar marks the band target as "none".
void save_pdf_curve(const PdfCurve& curve, const std::filesystem::path& path);
PdfCurve load_pdf_curve(const std::filesystem::path& path);

std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace cdf2pdf::uq
