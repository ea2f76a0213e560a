#include "cdf2pdf/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::stats {

EcdfTable::EcdfTable(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw ShapeError("ecdf: empty sample");
  for (const double v : sorted_) {
    if (std::isnan(v)) throw DomainError("ecdf: NaN sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EcdfTable::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double ecdf_eval(const EcdfTable& table, double x) { return table(x); }

double empirical_quantile(std::span<const double> samples, double p) {
  if (samples.empty()) throw ShapeError("empirical_quantile: empty sample");
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("empirical_quantile: p must be in (0, 1]");
  }
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double np = static_cast<double>(s.size()) * p;
  std::size_t rank = static_cast<std::size_t>(std::ceil(np - 1e-12));
  if (rank < 1) rank = 1;
  if (rank > s.size()) rank = s.size();
  return s[rank - 1];
}

std::vector<double> ecdf_targets(std::span<const double> values) {
  if (values.empty()) throw ShapeError("ecdf_targets: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), values[j]);
    out[j] = static_cast<double>(it - sorted.begin()) / n;
  }
  return out;
}

}  // namespace cdf2pdf::stats
