#pragma once

#include <span>
#include <vector>

namespace cdf2pdf::stats {

// Calibration diagnostic in probability space. For each target probability p
// the model-implied level is the fraction of model CDF values <= p; the
// residual is that level minus p. A perfectly calibrated set of model CDF
// values (dense and uniform on (0,1]) gives residuals ~ 0; values uniformly
// shifted by +c give residuals ~ -c away from the edges.
std::vector<double> quantile_residuals(std::span<const double> model_cdf_values,
                                       std::span<const double> probs);

// Pointwise difference model minus reference, same lengths.
std::vector<double> cdf_residuals(std::span<const double> model_cdf,
                                  std::span<const double> reference_cdf);

}  // namespace cdf2pdf::stats
