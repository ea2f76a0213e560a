#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdf2pdf/errors.hpp"
#include "cdf2pdf/onoff.hpp"
#include "cdf2pdf/rng.hpp"
#include "cdf2pdf/sir.hpp"

using namespace cdf2pdf;
using namespace cdf2pdf::sim;

TEST_CASE("counting likelihood normalizes over the observation grid") {
  const OnOffParams p{2.0, 3.0};
  double total = 0.0;
  for (long n = 0; n <= 60; ++n) {
    for (long m = 0; m <= 60; ++m) {
      total += std::exp(onoff_log_likelihood({n, m}, p));
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("counting likelihood boundary conventions") {
  // 0 * log 0 = 0, so the all-zero point has probability 1
  CHECK(onoff_log_likelihood({0, 0}, {0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(onoff_log_likelihood({1, 0}, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(onoff_log_likelihood({0, 2}, {5.0, 0.0}), DomainError);
}

TEST_CASE("conditional estimates") {
  CHECK(onoff_estimates({5, 2}) == std::pair{3.0, 2.0});
  CHECK(onoff_estimates({2, 5}) == std::pair{0.0, 3.5});
  CHECK(onoff_estimates({3, 3}) == std::pair{0.0, 3.0});
  CHECK(onoff_estimates({0, 0}) == std::pair{0.0, 0.0});
}

TEST_CASE("statistic is nonnegative over an exhaustive grid") {
  for (long n = 0; n <= 30; n += 3) {
    for (long m = 0; m <= 30; m += 3) {
      for (double mu = 0.0; mu <= 10.0; mu += 2.5) {
        for (double nu = 0.5; nu <= 10.0; nu += 2.375) {
          const double lam = onoff_lambda({n, m}, {mu, nu});
          CHECK(lam >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("statistic vanishes at the best fit and is 6 at a pinned point") {
  CHECK(onoff_lambda({5, 2}, {3.0, 2.0}) == 0.0);
  CHECK(onoff_lambda({2, 5}, {0.0, 3.5}) == 0.0);
  // observing (0,0) under means (1,1): -2 * (0 - (-3))
  CHECK(onoff_lambda({0, 0}, {1.0, 1.0}) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("mean trajectory reduces to exponential decay when beta = 0") {
  const SirParams p{0.1, 0.0};
  const SirState init{900.0, 100.0, 0.0};
  std::vector<double> grid;
  for (int t = 1; t <= 10; ++t) grid.push_back(t);
  const SirTrajectory traj = sir_mean_trajectory(p, init, grid);
  REQUIRE(traj.size() == 10);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double expect = 100.0 * std::exp(-0.1 * traj.t[k]);
    CHECK(traj.i[k] == doctest::Approx(expect).epsilon(1e-6));
    CHECK(traj.s[k] == doctest::Approx(900.0).epsilon(1e-12));
  }
}

TEST_CASE("mean trajectory is converged in the internal step") {
  const SirParams p{0.1, 5e-4};
  const SirState init{999.0, 1.0, 0.0};
  std::vector<double> grid;
  for (int t = 1; t <= 50; ++t) grid.push_back(t);
  const SirTrajectory coarse = sir_mean_trajectory(p, init, grid, 0.01);
  const SirTrajectory fine = sir_mean_trajectory(p, init, grid, 0.005);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::fabs(coarse.i[k] - fine.i[k]) <=
          1e-8 * std::max(1.0, std::fabs(fine.i[k])));
  }
}

TEST_CASE("mean trajectory conserves the population") {
  const SirParams p{0.2, 8e-4};
  const SirState init{999.0, 1.0, 0.0};
  std::vector<double> grid = {0.5, 1.0, 2.5, 7.0, 20.0, 50.0};
  const SirTrajectory traj = sir_mean_trajectory(p, init, grid);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(traj.s[k] + traj.i[k] + traj.r[k] ==
          doctest::Approx(1000.0).epsilon(1e-12));
  }
}

TEST_CASE("mean trajectory rejects a non-increasing grid") {
  const SirParams p{0.1, 5e-4};
  const SirState init{999.0, 1.0, 0.0};
  std::vector<double> bad = {1.0, 1.0, 2.0};
  CHECK_THROWS_AS(sir_mean_trajectory(p, init, bad), DomainError);
  std::vector<double> negative = {-1.0, 2.0};
  CHECK_THROWS_AS(sir_mean_trajectory(p, init, negative), DomainError);
}

TEST_CASE("stochastic epidemic: support, conservation, determinism") {
  const SirParams p{0.1, 5e-4};
  RngStream rng(44);
  const SirTrajectory traj = sir_simulate(p, 999, 1, 0, 50, rng);
  REQUIRE(traj.size() == 51);
  CHECK(traj.t.front() == 0.0);
  CHECK(traj.t.back() == 50.0);
  CHECK(traj.s[0] == 999.0);
  CHECK(traj.i[0] == 1.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(traj.s[k] + traj.i[k] + traj.r[k] == 1000.0);
    CHECK(traj.s[k] >= 0.0);
    CHECK(traj.i[k] >= 0.0);
    CHECK(traj.r[k] >= 0.0);
    if (k > 0) {
      CHECK(traj.s[k] <= traj.s[k - 1]);
      CHECK(traj.r[k] >= traj.r[k - 1]);
    }
  }

  RngStream rng2(44);
  const SirTrajectory again = sir_simulate(p, 999, 1, 0, 50, rng2);
  CHECK(again.i == traj.i);
  CHECK(again.s == traj.s);
}

TEST_CASE("stochastic epidemic matches the one-day means") {
  // day one from (S,I) = (999,1): E[new inf] = S*(1-exp(-beta)),
  // E[rec] = I*(1-exp(-alpha))
  const SirParams p{0.1, 5e-4};
  const double p_inf = 1.0 - std::exp(-5e-4);
  const double p_rec = 1.0 - std::exp(-0.1);
  const int reps = 20000;
  RngStream rng(45);
  double sum_new_inf = 0.0, sum_rec = 0.0;
  for (int r = 0; r < reps; ++r) {
    const SirTrajectory t = sir_simulate(p, 999, 1, 0, 1, rng);
    sum_new_inf += 999.0 - t.s[1];
    sum_rec += t.r[1];
  }
  const double mean_inf = sum_new_inf / reps;
  const double mean_rec = sum_rec / reps;
  // 5 sigma brackets
  const double sd_inf = std::sqrt(999.0 * p_inf * (1 - p_inf) / reps);
  const double sd_rec = std::sqrt(p_rec * (1 - p_rec) / reps);
  CHECK(std::fabs(mean_inf - 999.0 * p_inf) < 5.0 * sd_inf);
  CHECK(std::fabs(mean_rec - p_rec) < 5.0 * sd_rec);
}

TEST_CASE("distance statistic: pinned value, floor, domain") {
  const std::vector<double> means = {10.0, 20.0};
  CHECK(sir_lambda(std::vector<double>{10.0, 20.0}, means) == 0.0);
  // one observation off by 1: sqrt(mean(0.1, 0)) / 50... the squared pull is
  // 1/10, halved by the mean, root 0.22360679..., scaled by 1/50
  CHECK(sir_lambda(std::vector<double>{11.0, 20.0}, means) ==
        doctest::Approx(std::sqrt(0.05) / 50.0).epsilon(1e-14));

  const std::vector<double> zero_mean = {0.0, 20.0};
  CHECK_THROWS_AS(
      sir_lambda(std::vector<double>{1.0, 20.0}, zero_mean, false), DomainError);
  const double floored =
      sir_lambda(std::vector<double>{1.0, 20.0}, zero_mean, true);
  const double pull = (1.0 - 1e-3) * (1.0 - 1e-3) / 1e-3;
  CHECK(floored == doctest::Approx(std::sqrt(pull / 2.0) / 50.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      sir_lambda(std::vector<double>{1.0}, means, false), ShapeError);
}

TEST_CASE("uniform stream: range and moments") {
  RngStream rng(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(5e-3));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(5e-3));
}

TEST_CASE("uniform_int covers both endpoints") {
  RngStream rng(8);
  bool lo = false, hi = false;
  for (int k = 0; k < 1000; ++k) {
    const long v = rng.uniform_int(2, 9);
    CHECK(v >= 2);
    CHECK(v <= 9);
    lo = lo || v == 2;
    hi = hi || v == 9;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("normal stream moments") {
  RngStream rng(9);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::fabs(sum / n) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson stream moments on both sampling paths") {
  SUBCASE("inversion regime") {
    RngStream rng(10);
    const int n = 100000;
    const double mean = 3.5;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = static_cast<double>(rng.poisson(mean));
      CHECK(v >= 0);
      sum += v;
      sum2 += v * v;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(std::fabs(m - mean) < 5.0 * std::sqrt(mean / n));
    CHECK(var == doctest::Approx(mean).epsilon(0.05));
  }
  SUBCASE("rejection regime") {
    RngStream rng(11);
    const int n = 100000;
    const double mean = 80.0;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = static_cast<double>(rng.poisson(mean));
      sum += v;
      sum2 += v * v;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(std::fabs(m - mean) < 5.0 * std::sqrt(mean / n));
    CHECK(var == doctest::Approx(mean).epsilon(0.05));
  }
  SUBCASE("edge cases") {
    RngStream rng(12);
    CHECK(rng.poisson(0.0) == 0);
    CHECK_THROWS_AS(rng.poisson(-1.0), DomainError);
  }
}

TEST_CASE("binomial stream moments on both sampling paths") {
  SUBCASE("inversion regime") {
    RngStream rng(13);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = static_cast<double>(rng.binomial(40, 0.3));
      CHECK(v >= 0);
      CHECK(v <= 40);
      sum += v;
      sum2 += v * v;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(std::fabs(m - 12.0) < 5.0 * std::sqrt(8.4 / n));
    CHECK(var == doctest::Approx(8.4).epsilon(0.05));
  }
  SUBCASE("reflected p > 1/2") {
    RngStream rng(14);
    const int n = 100000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += static_cast<double>(rng.binomial(40, 0.7));
    CHECK(std::fabs(sum / n - 28.0) < 5.0 * std::sqrt(8.4 / n));
  }
  SUBCASE("large np count path") {
    RngStream rng(15);
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = static_cast<double>(rng.binomial(1000, 0.5));
      sum += v;
      sum2 += v * v;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(std::fabs(m - 500.0) < 5.0 * std::sqrt(250.0 / n));
    CHECK(var == doctest::Approx(250.0).epsilon(0.1));
  }
  SUBCASE("edges") {
    RngStream rng(16);
    CHECK(rng.binomial(10, 0.0) == 0);
    CHECK(rng.binomial(10, 1.0) == 10);
    CHECK(rng.binomial(0, 0.3) == 0);
    CHECK_THROWS_AS(rng.binomial(10, 1.5), DomainError);
    CHECK_THROWS_AS(rng.binomial(-1, 0.5), DomainError);
  }
}

TEST_CASE("child seeds separate by label and index") {
  const std::uint64_t a = child_seed(99, "alpha", 0);
  CHECK(a == child_seed(99, "alpha", 0));
  CHECK(a != child_seed(99, "alpha", 1));
  CHECK(a != child_seed(99, "beta", 0));
  CHECK(a != child_seed(100, "alpha", 0));
}
