#pragma once

#include <span>
#include <vector>

namespace cdf2pdf::stats {

// Empirical CDF over a finite sample: right-continuous step function,
// F(x) = (# samples <= x) / n.
class EcdfTable {
 public:
  explicit EcdfTable(std::vector<double> samples);  // sorts, rejects empty/NaN

  double operator()(double x) const;  // evaluate
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

double ecdf_eval(const EcdfTable& table, double x);

// Order-statistic quantile without interpolation: the ceil(n*p)-th smallest
// sample, p in (0, 1].
double empirical_quantile(std::span<const double> samples, double p);

// ECDF targets for a group of statistics, in the order given:
// target[j] = (# values <= value[j]) / n, so values lie in {1/n, ..., 1}
// and ties share a target.
std::vector<double> ecdf_targets(std::span<const double> values);

}  // namespace cdf2pdf::stats
