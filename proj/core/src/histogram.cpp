#include "cdf2pdf/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::stats {

double HistogramDensity::eval(double x) const {
  if (edges.empty() || x < edges.front() || x > edges.back()) return 0.0;
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t k = static_cast<std::size_t>(it - edges.begin());
  if (k == 0) k = 1;                       // x == front edge
  if (k > density.size()) k = density.size();  // x == back edge
  return density[k - 1];
}

namespace {

HistogramDensity fill(std::span<const double> samples,
                      std::vector<double> edges) {
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (!(edges[k] > edges[k - 1])) {
      throw DomainError("histogram: edges must be strictly increasing");
    }
  }
  const std::size_t bins = edges.size() - 1;
  std::vector<double> counts(bins, 0.0);
  std::size_t inside = 0;
  for (const double x : samples) {
    if (std::isnan(x)) throw DomainError("histogram: NaN sample");
    if (x < edges.front() || x > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    std::size_t k = static_cast<std::size_t>(it - edges.begin());
    if (k == 0) k = 1;
    if (k > bins) k = bins;
    counts[k - 1] += 1.0;
    ++inside;
  }
  if (inside == 0) throw DomainError("histogram: no samples inside the edges");
  HistogramDensity h;
  h.edges = std::move(edges);
  h.density.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double width = h.edges[k + 1] - h.edges[k];
    h.density[k] = counts[k] / (static_cast<double>(inside) * width);
  }
  return h;
}

}  // namespace

HistogramDensity histogram_density(std::span<const double> samples, int bins) {
  if (samples.empty()) throw ShapeError("histogram: empty sample");
  if (bins < 1) throw DomainError("histogram: bins must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {  // degenerate sample: give it unit width around the value
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return fill(samples, std::move(edges));
}

HistogramDensity histogram_density(std::span<const double> samples,
                                   std::span<const double> edges) {
  if (samples.empty()) throw ShapeError("histogram: empty sample");
  if (edges.size() < 2) throw ShapeError("histogram: need at least two edges");
  return fill(samples, std::vector<double>(edges.begin(), edges.end()));
}

int sturges_bins(std::size_t n) {
  if (n == 0) throw ShapeError("sturges_bins: empty sample");
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
}

}  // namespace cdf2pdf::stats
