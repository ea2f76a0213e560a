#pragma once

#include <span>
#include <vector>

namespace cdf2pdf::stats {

// Normalized histogram: density[k] = in-range count in bin k divided by
// (in-range total * bin width), so sum(density * width) == 1. Samples equal
// to the upper edge land in the last bin.
struct HistogramDensity {
  std::vector<double> edges;    // size bins + 1
  std::vector<double> density;  // size bins
  std::size_t bins() const { return density.size(); }
  double eval(double x) const;  // 0 outside the range
};

// Equal-width bins over [min, max] of the sample.
HistogramDensity histogram_density(std::span<const double> samples, int bins);

// Explicit strictly increasing edges; out-of-range samples are dropped.
HistogramDensity histogram_density(std::span<const double> samples,
                                   std::span<const double> edges);

// Sturges' rule: ceil(log2(n)) + 1.
int sturges_bins(std::size_t n);

}  // namespace cdf2pdf::stats
