#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdf2pdf/ecdf.hpp"
#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/histogram.hpp"
#include "cdf2pdf/residuals.hpp"
#include "cdf2pdf/rng.hpp"

using namespace cdf2pdf;
using namespace cdf2pdf::stats;

TEST_CASE("ecdf step function") {
  const EcdfTable F(std::vector<double>{3.0, 1.0, 2.0, 2.0});
  CHECK(F(0.9) == 0.0);
  CHECK(F(1.0) == 0.25);
  CHECK(F(1.99) == 0.25);
  CHECK(F(2.0) == 0.75);
  CHECK(F(3.0) == 1.0);
  CHECK(F(99.0) == 1.0);
  CHECK_THROWS_AS(EcdfTable(std::vector<double>{}), ShapeError);
  CHECK_THROWS_AS(EcdfTable(std::vector<double>{1.0, std::nan("")}), DomainError);
}

TEST_CASE("order-statistic quantile") {
  const std::vector<double> s = {4.0, 1.0, 3.0, 2.0};  // sorted inside
  CHECK(empirical_quantile(s, 0.25) == 1.0);
  CHECK(empirical_quantile(s, 0.2499) == 1.0);
  CHECK(empirical_quantile(s, 0.5) == 2.0);
  CHECK(empirical_quantile(s, 0.51) == 3.0);
  CHECK(empirical_quantile(s, 0.75) == 3.0);
  CHECK(empirical_quantile(s, 1.0) == 4.0);
  CHECK_THROWS_AS(empirical_quantile(s, 0.0), DomainError);
  CHECK_THROWS_AS(empirical_quantile(s, 1.5), DomainError);
  CHECK_THROWS_AS(empirical_quantile(std::vector<double>{}, 0.5), ShapeError);
}

TEST_CASE("ecdf targets keep the input order, share ties, and top out at 1") {
  const std::vector<double> values = {5.0, 1.0, 5.0, 2.0};
  const std::vector<double> targets = ecdf_targets(values);
  CHECK(targets == std::vector<double>{1.0, 0.25, 1.0, 0.5});
}

TEST_CASE("quantile residuals vanish for calibrated values") {
  // model CDF values on a near-uniform grid of (0,1]
  std::vector<double> values;
  const int n = 1000;
  for (int k = 1; k <= n; ++k) values.push_back(static_cast<double>(k) / n);
  const std::vector<double> probs = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::vector<double> res = quantile_residuals(values, probs);
  REQUIRE(res.size() == probs.size());
  for (const double r : res) CHECK(std::fabs(r) <= 1.0 / n + 1e-12);
}

TEST_CASE("quantile residuals flip the sign of a uniform shift") {
  // values = (i+0.5)/n + c away from the edges reads back as -c
  const int n = 1000;
  const double c = 0.03;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) values.push_back((i + 0.5) / n + c);
  const std::vector<double> probs = {0.2, 0.4, 0.6, 0.8};
  const std::vector<double> res = quantile_residuals(values, probs);
  for (const double r : res) CHECK(r == doctest::Approx(-c).epsilon(0.05));
}

TEST_CASE("cdf residuals are an elementwise difference") {
  const std::vector<double> model = {0.1, 0.5, 0.9};
  const std::vector<double> ref = {0.2, 0.5, 0.8};
  const std::vector<double> res = cdf_residuals(model, ref);
  CHECK(res == std::vector<double>{0.1 - 0.2, 0.0, 0.9 - 0.8});
  CHECK_THROWS_AS(cdf_residuals(model, std::vector<double>{0.1}), ShapeError);
}

TEST_CASE("histogram density normalizes and is flat for uniform draws") {
  RngStream rng(17);
  std::vector<double> samples(100000);
  for (auto& v : samples) v = rng.uniform();
  const HistogramDensity h = histogram_density(samples, 10);
  REQUIRE(h.bins() == 10);

  double mass = 0.0;
  for (std::size_t k = 0; k < h.bins(); ++k) {
    mass += h.density[k] * (h.edges[k + 1] - h.edges[k]);
    CHECK(h.density[k] == doctest::Approx(1.0).epsilon(0.05));
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("histogram evaluation: outside range, last edge inclusive") {
  const std::vector<double> samples = {0.5};
  const std::vector<double> edges = {0.0, 0.5, 1.0};
  const HistogramDensity h = histogram_density(samples, edges);
  CHECK(h.eval(-0.1) == 0.0);
  CHECK(h.eval(1.1) == 0.0);
  CHECK(h.eval(0.5) == 2.0);   // only sample, second bin, width 0.5
  CHECK(h.eval(1.0) == 2.0);   // upper edge lands in the last bin
  CHECK(h.eval(0.25) == 0.0);
}

TEST_CASE("histogram with explicit edges drops out-of-range samples") {
  const std::vector<double> samples = {-1.0, 0.5, 2.0};
  const std::vector<double> edges = {0.0, 1.0};
  const HistogramDensity h = histogram_density(samples, edges);
  REQUIRE(h.bins() == 1);
  CHECK(h.density[0] == 1.0);  // one in-range sample over width 1
}

TEST_CASE("histogram edge cases") {
  // all samples identical: range degenerates, widen around the point
  const std::vector<double> flat = {2.0, 2.0, 2.0};
  const HistogramDensity h = histogram_density(flat, 4);
  double mass = 0.0;
  for (std::size_t k = 0; k < h.bins(); ++k) {
    mass += h.density[k] * (h.edges[k + 1] - h.edges[k]);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(histogram_density(std::vector<double>{}, 4), ShapeError);
  CHECK_THROWS_AS(histogram_density(flat, 0), DomainError);
  const std::vector<double> bad_edges = {1.0, 1.0};
  CHECK_THROWS_AS(histogram_density(flat, bad_edges), DomainError);
}

TEST_CASE("sturges rule") {
  CHECK(sturges_bins(1) == 1);
  CHECK(sturges_bins(100) == 8);
  CHECK(sturges_bins(1024) == 11);
}
