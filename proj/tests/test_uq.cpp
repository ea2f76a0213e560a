#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <vector>

#include "cdf2pdf/activations.hpp"
#include "cdf2pdf/conformal.hpp"
#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/ensemble.hpp"
#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/network.hpp"
#include "cdf2pdf/pdf_curve.hpp"
#include "cdf2pdf/rng.hpp"
#include "cdf2pdf/training.hpp"

using namespace cdf2pdf;
using namespace cdf2pdf::uq;

namespace {

// network computing sigmoid(w . x + b) exactly
nn::Network affine_sigmoid_net(double w0, double w1, double w2, double b) {
  nn::Network net;
  net.spec.widths = {3, 1, 1};
  net.spec.hidden = {nn::Activation::linear};
  net.spec.output = nn::Activation::sigmoid;
  net.in_shift.assign(3, 0.0);
  net.in_scale.assign(3, 1.0);
  nn::Layer l0;
  l0.in = 3;
  l0.out = 1;
  l0.act = nn::Activation::linear;
  l0.w = {w0, w1, w2};
  l0.b = {b};
  nn::Layer l1;
  l1.in = 1;
  l1.out = 1;
  l1.act = nn::Activation::sigmoid;
  l1.w = {1.0};
  l1.b = {0.0};
  net.layers = {l0, l1};
  return net;
}

// constant-output network (forward == c everywhere, zero input derivative)
nn::Network constant_net(double c) {
  nn::Network net;
  net.spec.widths = {3, 1, 1};
  net.spec.hidden = {nn::Activation::linear};
  net.spec.output = nn::Activation::linear;
  net.in_shift.assign(3, 0.0);
  net.in_scale.assign(3, 1.0);
  nn::Layer l0;
  l0.in = 3;
  l0.out = 1;
  l0.act = nn::Activation::linear;
  l0.w = {0.0, 0.0, 0.0};
  l0.b = {0.0};
  nn::Layer l1;
  l1.in = 1;
  l1.out = 1;
  l1.act = nn::Activation::linear;
  l1.w = {0.0};
  l1.b = {c};
  net.layers = {l0, l1};
  return net;
}

data::Dataset noisy_sigmoid_dataset(std::size_t n, double noise,
                                    std::uint64_t seed) {
  data::Dataset ds;
  RngStream rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = rng.uniform(-4.0, 4.0);
    const double y = nn::sigmoid(lam) + rng.uniform(-noise, noise);
    ds.append(0.0, 0.0, lam, y, static_cast<long>(i));
  }
  return ds;
}

}  // namespace

TEST_CASE("calibration radius is the ceil((n+1)(1-alpha)) order statistic") {
  const std::vector<double> scores = {1.0, 2.0, 3.0, 4.0};
  const ConformalCalibration c = conformal_calibrate(scores, 0.5);
  CHECK(c.q_hat == 3.0);
  CHECK_FALSE(c.at_max);
  CHECK(c.alpha == 0.5);

  // rank 5 of 4 scores: fall back to the max and flag it
  const ConformalCalibration tight = conformal_calibrate(scores, 0.05);
  CHECK(tight.q_hat == 4.0);
  CHECK(tight.at_max);

  const ConformalCalibration edge = conformal_calibrate(scores, 0.2);
  CHECK(edge.q_hat == 4.0);
  CHECK_FALSE(edge.at_max);

  CHECK_THROWS_AS(conformal_calibrate(std::vector<double>{}, 0.5), ShapeError);
  CHECK_THROWS_AS(conformal_calibrate(scores, 0.0), DomainError);
  CHECK_THROWS_AS(conformal_calibrate(scores, 1.0), DomainError);
  CHECK_THROWS_AS(conformal_calibrate(std::vector<double>{-1.0, 2.0}, 0.5),
                  DomainError);
}

TEST_CASE("model calibration scores are absolute residuals") {
  const nn::Network net = affine_sigmoid_net(0.0, 0.0, 1.0, 0.0);
  data::Dataset calib;
  calib.append(0.0, 0.0, 0.5, 0.7, 0);
  calib.append(0.0, 0.0, -1.0, 0.1, 1);
  calib.append(0.0, 0.0, 2.0, 0.9, 2);
  const ConformalCalibration c = conformal_calibrate(net, calib, 0.4);
  REQUIRE(c.scores.size() == 3);
  // sorted |sigmoid(lambda) - target|
  std::vector<double> expect = {std::fabs(nn::sigmoid(0.5) - 0.7),
                                std::fabs(nn::sigmoid(-1.0) - 0.1),
                                std::fabs(nn::sigmoid(2.0) - 0.9)};
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < 3; ++i) CHECK(c.scores[i] == expect[i]);
}

TEST_CASE("band width is twice the radius before clamping") {
  ConformalCalibration c;
  c.q_hat = 0.2;
  const Interval plain = conformal_band(0.5, c);
  // (center + q) - (center - q) rounds, so not bit-exact
  CHECK(plain.hi - plain.lo == doctest::Approx(2.0 * c.q_hat).epsilon(1e-15));
  CHECK(plain.lo == 0.3);
  CHECK(plain.hi == 0.7);

  const Interval clamped = conformal_band(0.95, c, {{0.0, 1.0}});
  CHECK(clamped.lo == doctest::Approx(0.75));
  CHECK(clamped.hi == 1.0);
}

TEST_CASE("marginal coverage lands near the nominal level") {
  // exact model plus bounded label noise: the residual distribution is known
  const nn::Network net = affine_sigmoid_net(0.0, 0.0, 1.0, 0.0);
  const data::Dataset calib = noisy_sigmoid_dataset(1000, 0.05, 200);
  const data::Dataset fresh = noisy_sigmoid_dataset(2000, 0.05, 201);

  const ConformalCalibration c = conformal_calibrate(net, calib, 0.32);
  const double cov = coverage_check(net, c, fresh);
  CHECK(cov > 0.62);
  CHECK(cov < 0.74);

  const ConformalCalibration wide = conformal_calibrate(net, calib, 0.05);
  CHECK(coverage_check(net, wide, fresh) > 0.92);
}

TEST_CASE("coverage_fraction counts scores inside the radius") {
  const std::vector<double> scores = {0.1, 0.2, 0.3, 0.4};
  CHECK(coverage_fraction(scores, 0.25) == 0.5);
  CHECK(coverage_fraction(scores, 0.4) == 1.0);
  CHECK(coverage_fraction(scores, 0.05) == 0.0);
}

TEST_CASE("pdf curve of an exact sigmoid model") {
  // F(lambda) = sigmoid(2 lambda), so f = 2 F (1 - F)
  const nn::Network net = affine_sigmoid_net(0.0, 0.0, 2.0, 0.0);
  const std::vector<double> grid = linspace(-3.0, 3.0, 121);
  CHECK(grid.front() == -3.0);
  CHECK(grid.back() == 3.0);
  CHECK(grid[60] == doctest::Approx(0.0));

  const PdfCurve curve = build_pdf_curve(net, {0.0, 0.0}, grid);
  REQUIRE(curve.lambda.size() == 121);
  CHECK(curve.monotonicity_violation_rate == 0.0);
  CHECK_FALSE(curve.has_band());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double F = nn::sigmoid(2.0 * grid[k]);
    CHECK(curve.F_hat[k] == doctest::Approx(F).epsilon(1e-14));
    CHECK(curve.f_hat[k] ==
          doctest::Approx(2.0 * F * (1.0 - F)).epsilon(1e-12));
  }

  // a decreasing model flags every point
  const nn::Network bad = affine_sigmoid_net(0.0, 0.0, -2.0, 0.0);
  CHECK(build_pdf_curve(bad, {0.0, 0.0}, grid).monotonicity_violation_rate == 1.0);
}

TEST_CASE("cdf band attaches clamped to [0,1]") {
  const nn::Network net = affine_sigmoid_net(0.0, 0.0, 2.0, 0.0);
  const std::vector<double> grid = linspace(-3.0, 3.0, 61);
  PdfCurve curve = build_pdf_curve(net, {0.0, 0.0}, grid);

  ConformalCalibration c;
  c.alpha = 0.1;
  c.q_hat = 0.05;
  attach_cdf_band(curve, c);
  REQUIRE(curve.has_band());
  CHECK(curve.band_target == "cdf");
  CHECK(curve.q_hat == 0.05);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(curve.band_lo[k] >= 0.0);
    CHECK(curve.band_hi[k] <= 1.0);
    CHECK(curve.band_lo[k] == std::max(0.0, curve.F_hat[k] - 0.05));
    CHECK(curve.band_hi[k] == std::min(1.0, curve.F_hat[k] + 0.05));
  }

  PdfCurve pcurve = build_pdf_curve(net, {0.0, 0.0}, grid);
  attach_pdf_band(pcurve, c);
  CHECK(pcurve.band_target == "pdf");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(pcurve.band_lo[k] >= 0.0);
    CHECK(pcurve.band_hi[k] == pcurve.f_hat[k] + 0.05);
  }
}

TEST_CASE("pdf curve save/load round-trip") {
  const nn::Network net = affine_sigmoid_net(0.1, -0.2, 1.5, 0.05);
  const std::vector<double> grid = linspace(-2.0, 2.0, 17);
  PdfCurve curve = build_pdf_curve(net, {0.7, 1.3}, grid);
  ConformalCalibration c;
  c.alpha = 0.25;
  c.q_hat = 0.03;
  attach_cdf_band(curve, c);

  const auto path = std::filesystem::temp_directory_path() / "cdf2pdf_curve.csv";
  save_pdf_curve(curve, path);
  const PdfCurve back = load_pdf_curve(path);
  CHECK(back.lambda == curve.lambda);
  CHECK(back.F_hat == curve.F_hat);
  CHECK(back.f_hat == curve.f_hat);
  CHECK(back.band_lo == curve.band_lo);
  CHECK(back.band_hi == curve.band_hi);
  CHECK(back.band_target == "cdf");
  CHECK(back.alpha == 0.25);
  CHECK(back.q_hat == 0.03);
  CHECK(back.theta.theta1 == 0.7);
  CHECK(back.theta.theta2 == 1.3);

  // unbanded save mirrors F_hat into the band columns and marks "none"
  const PdfCurve bare = build_pdf_curve(net, {0.7, 1.3}, grid);
  save_pdf_curve(bare, path);
  const PdfCurve bare_back = load_pdf_curve(path);
  CHECK_FALSE(bare_back.has_band());
  CHECK(bare_back.band_target.empty());

  std::filesystem::remove(path);
  std::filesystem::path mp = path;
  mp += ".meta.json";
  std::filesystem::remove(mp);
}

TEST_CASE("bootstrap ensemble: reproducible and worker-count invariant") {
  data::Dataset train_set;
  RngStream rng(300);
  for (int i = 0; i < 120; ++i) {
    const double lam = rng.uniform(-2.0, 2.0);
    train_set.append(0.0, 0.0, lam, nn::sigmoid(lam), i);
  }

  nn::NetworkSpec spec = nn::NetworkSpec::dense(
      3, 1, 4, nn::Activation::tanh, nn::Activation::sigmoid, nn::InitSpec{9, 1.0});
  train::TrainConfig cfg;
  cfg.optimizer.lr = 5e-3;
  cfg.batch = 40;
  cfg.iterations = 60;
  cfg.val_every = 20;

  const Ensemble a = bootstrap_ensemble(train_set, spec, cfg, 4, 77, 1);
  REQUIRE(a.size() == 4);
  CHECK(a.source == EnsembleSource::bootstrap);

  const Ensemble b = bootstrap_ensemble(train_set, spec, cfg, 4, 77, 3);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < a.members[k].layers.size(); ++l) {
      CHECK(a.members[k].layers[l].w == b.members[k].layers[l].w);
      CHECK(a.members[k].layers[l].b == b.members[k].layers[l].b);
    }
  }

  // members differ from each other through their resamples
  CHECK(a.members[0].layers[0].w != a.members[1].layers[0].w);

  // a different master seed moves every member
  const Ensemble c = bootstrap_ensemble(train_set, spec, cfg, 4, 78, 1);
  CHECK(c.members[0].layers[0].w != a.members[0].layers[0].w);
}

TEST_CASE("weight fluctuation: spread scales with sigma, zero is exact") {
  const auto spec = nn::NetworkSpec::dense(3, 2, 6, nn::Activation::prelu,
                                           nn::Activation::sigmoid,
                                           nn::InitSpec{40, 1.0});
  const nn::Network net = nn::init_network(spec);

  const Ensemble zero = weight_fluctuate(net, 0.0, 5, 11);
  REQUIRE(zero.size() == 5);
  for (const nn::Network& m : zero.members) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      CHECK(m.layers[l].w == net.layers[l].w);
      CHECK(m.layers[l].b == net.layers[l].b);
    }
  }

  const double sigma = 1e-2;
  const Ensemble ens = weight_fluctuate(net, sigma, 50, 11);
  CHECK(ens.sigma == sigma);
  CHECK(ens.source == EnsembleSource::weight_fluctuation);
  double sum2 = 0.0;
  std::size_t count = 0;
  for (const nn::Network& m : ens.members) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      for (std::size_t i = 0; i < net.layers[l].w.size(); ++i) {
        const double d = m.layers[l].w[i] - net.layers[l].w[i];
        sum2 += d * d;
        ++count;
      }
      // learnable slopes are not perturbed
      CHECK(m.layers[l].slope == net.layers[l].slope);
    }
  }
  const double sd = std::sqrt(sum2 / static_cast<double>(count));
  CHECK(sd == doctest::Approx(sigma).epsilon(0.15));

  const Ensemble again = weight_fluctuate(net, sigma, 50, 11);
  for (std::size_t k = 0; k < ens.size(); ++k) {
    CHECK(again.members[k].layers[0].w == ens.members[k].layers[0].w);
  }

  CHECK_THROWS_AS(weight_fluctuate(net, -0.1, 5, 11), DomainError);
  CHECK_THROWS_AS(weight_fluctuate(net, 0.1, 0, 11), ConfigError);
}

TEST_CASE("ensemble envelope takes pointwise quantiles and mean") {
  Ensemble ens;
  ens.members = {constant_net(0.1), constant_net(0.5), constant_net(0.9)};
  const std::vector<double> grid = {0.0, 1.0};

  const Envelope env = ensemble_envelope(ens, {0.0, 0.0}, grid, 0.5, CurveKind::cdf);
  REQUIRE(env.lambda.size() == 2);
  for (std::size_t g = 0; g < 2; ++g) {
    // order statistics at p = 0.25 and 0.75 of {0.1, 0.5, 0.9}
    CHECK(env.lo[g] == 0.1);
    CHECK(env.hi[g] == 0.9);
    CHECK(env.mean[g] == doctest::Approx(0.5).epsilon(1e-15));
  }

  const Envelope flat = ensemble_envelope(ens, {0.0, 0.0}, grid, 0.5, CurveKind::pdf);
  for (std::size_t g = 0; g < 2; ++g) {
    CHECK(flat.lo[g] == 0.0);
    CHECK(flat.hi[g] == 0.0);
    CHECK(flat.mean[g] == 0.0);
  }

  CHECK_THROWS_AS(ensemble_envelope(ens, {0.0, 0.0}, grid, 1.5, CurveKind::cdf),
                  DomainError);
  CHECK_THROWS_AS(ensemble_envelope(Ensemble{}, {0.0, 0.0}, grid, 0.5,
                                    CurveKind::cdf),
                  ShapeError);
}

TEST_CASE("zero-sigma fluctuation envelope has zero width") {
  const auto spec = nn::NetworkSpec::dense(3, 1, 5, nn::Activation::silu,
                                           nn::Activation::sigmoid,
                                           nn::InitSpec{50, 1.0});
  const nn::Network net = nn::init_network(spec);
  const Ensemble ens = weight_fluctuate(net, 0.0, 8, 3);
  const std::vector<double> grid = linspace(-2.0, 2.0, 21);
  const Envelope env = ensemble_envelope(ens, {0.3, -0.4}, grid, 0.68,
                                         CurveKind::cdf);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    CHECK(env.hi[g] - env.lo[g] == 0.0);
    // mean of 8 identical values can differ from them by rounding
    CHECK(env.mean[g] == doctest::Approx(env.lo[g]).epsilon(1e-15));
  }
}
