#pragma once

#include <span>
#include <vector>

#include "cdf2pdf/rng.hpp"

namespace cdf2pdf::sim {

// Susceptible-infected-removed dynamics. beta is the per-contact transmission
// rate (dS/dt = -beta*S*I), alpha the recovery rate (dR/dt = alpha*I).
struct SirParams {
  double alpha = 0.0;
  double beta = 0.0;
};

struct SirState {
  double s = 0.0;
  double i = 0.0;
  double r = 0.0;
};

struct SirTrajectory {
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> i;
  std::vector<double> r;
  std::size_t size() const { return t.size(); }
};

// Deterministic mean trajectory by classical fourth-order Runge-Kutta with a
// fixed internal step (subdivided to land exactly on each grid time). The
// grid must be strictly increasing and start at or after 0; the state at
// grid[0] is reached by integrating from t = 0.
SirTrajectory sir_mean_trajectory(const SirParams& p, const SirState& init,
                                  std::span<const double> grid,
                                  double step = 0.01);

// Stochastic chain-binomial epidemic on integer counts with daily steps:
// new infections ~ Binomial(S, 1 - exp(-beta*I)), recoveries ~
// Binomial(I, 1 - exp(-alpha)), both from the start-of-day state. The
// trajectory covers t = 0..horizon inclusive. Population is conserved
// exactly.
SirTrajectory sir_simulate(const SirParams& p, long s0, long i0, long r0,
                           int horizon_days, RngStream& rng);

// Scaled goodness-of-fit distance between an observed daily infected series
// and the model means at the same times:
//   (1/50) * sqrt( mean over n of (x_n - I_n)^2 / I_n ).
// Every mean must be positive; with floor_mean the means are floored at
// 1e-3 instead of raising an error.
double sir_lambda(std::span<const double> observed_infected,
                  std::span<const double> mean_infected,
                  bool floor_mean = false);

inline constexpr double kSirLambdaScale = 1.0 / 50.0;
inline constexpr double kSirMeanFloor = 1e-3;

}  // namespace cdf2pdf::sim
