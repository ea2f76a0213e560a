#include "cdf2pdf/residuals.hpp"

#include <algorithm>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::stats {

std::vector<double> quantile_residuals(std::span<const double> model_cdf_values,
                                       std::span<const double> probs) {
  if (model_cdf_values.empty()) {
    throw ShapeError("quantile_residuals: empty model CDF sample");
  }
  std::vector<double> sorted(model_cdf_values.begin(), model_cdf_values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> out;
  out.reserve(probs.size());
  for (const double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("quantile_residuals: probability outside [0,1]");
    }
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), p);
    const double level = static_cast<double>(it - sorted.begin()) / n;
    out.push_back(level - p);
  }
  return out;
}

std::vector<double> cdf_residuals(std::span<const double> model_cdf,
                                  std::span<const double> reference_cdf) {
  if (model_cdf.size() != reference_cdf.size()) {
    throw ShapeError("cdf_residuals: length mismatch");
  }
  std::vector<double> out(model_cdf.size());
  for (std::size_t k = 0; k < model_cdf.size(); ++k) {
    out[k] = model_cdf[k] - reference_cdf[k];
  }
  return out;
}

}  // namespace cdf2pdf::stats
