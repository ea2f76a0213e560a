#include "cdf2pdf/pdf_curve.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "cdf2pdf/csv.hpp"
#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::uq {

using nlohmann::json;

double cdf_eval(const nn::Network& net, const ThetaPoint& theta, double lambda) {
  const double x[3] = {theta.theta1, theta.theta2, lambda};
  return net.forward(x);
}

double pdf_eval(const nn::Network& net, const ThetaPoint& theta, double lambda) {
  const double x[3] = {theta.theta1, theta.theta2, lambda};
  return net.input_grad(x, 2);
}

PdfCurve build_pdf_curve(const nn::Network& net, const ThetaPoint& theta,
                         std::span<const double> lambda_grid) {
  if (lambda_grid.empty()) throw ShapeError("build_pdf_curve: empty grid");
  PdfCurve c;
  c.theta = theta;
  c.lambda.assign(lambda_grid.begin(), lambda_grid.end());
  c.F_hat.resize(lambda_grid.size());
  c.f_hat.resize(lambda_grid.size());
  std::size_t negative = 0;
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    c.F_hat[k] = cdf_eval(net, theta, lambda_grid[k]);
    c.f_hat[k] = pdf_eval(net, theta, lambda_grid[k]);
    if (c.f_hat[k] < 0.0) ++negative;
  }
  c.monotonicity_violation_rate =
      static_cast<double>(negative) / static_cast<double>(lambda_grid.size());
  return c;
}

void attach_cdf_band(PdfCurve& curve, const ConformalCalibration& calib) {
  curve.band_lo.resize(curve.F_hat.size());
  curve.band_hi.resize(curve.F_hat.size());
  for (std::size_t k = 0; k < curve.F_hat.size(); ++k) {
    const Interval b = conformal_band(curve.F_hat[k], calib, {{0.0, 1.0}});
    curve.band_lo[k] = b.lo;
    curve.band_hi[k] = b.hi;
  }
  curve.band_target = "cdf";
  curve.alpha = calib.alpha;
  curve.q_hat = calib.q_hat;
}

void attach_pdf_band(PdfCurve& curve, const ConformalCalibration& calib) {
  curve.band_lo.resize(curve.f_hat.size());
  curve.band_hi.resize(curve.f_hat.size());
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < curve.f_hat.size(); ++k) {
    const Interval b = conformal_band(curve.f_hat[k], calib, {{0.0, inf}});
    curve.band_lo[k] = b.lo;
    curve.band_hi[k] = b.hi;
  }
  curve.band_target = "pdf";
  curve.alpha = calib.alpha;
  curve.q_hat = calib.q_hat;
}

void save_pdf_curve(const PdfCurve& curve, const std::filesystem::path& path) {
  const bool banded = curve.has_band();
  const std::vector<double>& lo = banded ? curve.band_lo : curve.F_hat;
  const std::vector<double>& hi = banded ? curve.band_hi : curve.F_hat;
  write_csv(path, {"lambda", "F_hat", "f_hat", "band_lo", "band_hi"},
            {curve.lambda, curve.F_hat, curve.f_hat, lo, hi});

  json meta;
  meta["format"] = "cdf2pdf-curve";
  meta["version"] = 1;
  meta["theta1"] = curve.theta.theta1;
  meta["theta2"] = curve.theta.theta2;
  meta["band"] = banded ? curve.band_target : "none";
  if (banded) {
    meta["alpha"] = curve.alpha;
    meta["q_hat"] = curve.q_hat;
  }
  meta["monotonicity_violation_rate"] = curve.monotonicity_violation_rate;
  std::filesystem::path mp = path;
  mp += ".meta.json";
  std::ofstream out(mp);
  if (!out) throw DependencyError("cannot write curve metadata: " + mp.string());
  out << meta.dump(1) << '\n';
}

PdfCurve load_pdf_curve(const std::filesystem::path& path) {
  const CsvTable table =
      read_csv(path, {"lambda", "F_hat", "f_hat", "band_lo", "band_hi"});
  PdfCurve c;
  for (const auto& row : table.rows) {
    c.lambda.push_back(row[0]);
    c.F_hat.push_back(row[1]);
    c.f_hat.push_back(row[2]);
    c.band_lo.push_back(row[3]);
    c.band_hi.push_back(row[4]);
  }

  std::filesystem::path mp = path;
  mp += ".meta.json";
  std::ifstream in(mp);
  if (in) {
    try {
      json meta;
      in >> meta;
      c.theta.theta1 = meta.at("theta1").get<double>();
      c.theta.theta2 = meta.at("theta2").get<double>();
      const std::string band = meta.at("band").get<std::string>();
      if (band == "none") {
        c.band_lo.clear();
        c.band_hi.clear();
      } else {
        c.band_target = band;
        c.alpha = meta.at("alpha").get<double>();
        c.q_hat = meta.at("q_hat").get<double>();
      }
      c.monotonicity_violation_rate =
          meta.at("monotonicity_violation_rate").get<double>();
    } catch (const json::exception& e) {
      throw ParseError("curve metadata malformed (" + mp.string() + "): " + e.what());
    }
  }
  return c;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw DomainError("linspace: need at least two points");
  if (!(hi > lo)) throw DomainError("linspace: hi must exceed lo");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace cdf2pdf::uq
