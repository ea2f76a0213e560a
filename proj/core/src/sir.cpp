#include "cdf2pdf/sir.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::sim {

namespace {

struct Deriv {
  double ds, di, dr;
};

Deriv rhs(const SirParams& p, const SirState& y) {
  const double infection = p.beta * y.s * y.i;
  const double recovery = p.alpha * y.i;
  return {-infection, infection - recovery, recovery};
}

SirState rk4_step(const SirParams& p, const SirState& y, double h) {
  const Deriv k1 = rhs(p, y);
  const Deriv k2 = rhs(p, {y.s + 0.5 * h * k1.ds, y.i + 0.5 * h * k1.di,
                           y.r + 0.5 * h * k1.dr});
  const Deriv k3 = rhs(p, {y.s + 0.5 * h * k2.ds, y.i + 0.5 * h * k2.di,
                           y.r + 0.5 * h * k2.dr});
  const Deriv k4 = rhs(p, {y.s + h * k3.ds, y.i + h * k3.di, y.r + h * k3.dr});
  return {y.s + h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
          y.i + h / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di),
          y.r + h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr)};
}

void check_params(const SirParams& p) {
  if (!(p.alpha >= 0.0) || !(p.beta >= 0.0)) {
    throw DomainError("sir: rates must be >= 0");
  }
}

}  // namespace

SirTrajectory sir_mean_trajectory(const SirParams& p, const SirState& init,
                                  std::span<const double> grid, double step) {
  check_params(p);
  if (!(step > 0.0)) throw DomainError("sir: integration step must be > 0");
  if (grid.empty()) throw ShapeError("sir: empty time grid");
  if (!(grid.front() >= 0.0)) throw DomainError("sir: grid starts before 0");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw DomainError("sir: time grid must be strictly increasing");
    }
  }

  SirTrajectory out;
  out.t.reserve(grid.size());
  out.s.reserve(grid.size());
  out.i.reserve(grid.size());
  out.r.reserve(grid.size());

  SirState y = init;
  double t = 0.0;
  for (const double target : grid) {
    const double span = target - t;
    if (span > 0.0) {
      const long n_sub = std::max(1L, static_cast<long>(std::ceil(span / step - 1e-12)));
      const double h = span / static_cast<double>(n_sub);
      for (long k = 0; k < n_sub; ++k) y = rk4_step(p, y, h);
      t = target;
    }
    out.t.push_back(target);
    out.s.push_back(y.s);
    out.i.push_back(y.i);
    out.r.push_back(y.r);
  }
  return out;
}

SirTrajectory sir_simulate(const SirParams& p, long s0, long i0, long r0,
                           int horizon_days, RngStream& rng) {
  check_params(p);
  if (s0 < 0 || i0 < 0 || r0 < 0) throw DomainError("sir: negative initial count");
  if (horizon_days < 1) throw DomainError("sir: horizon must be >= 1 day");

  long s = s0, i = i0, r = r0;
  SirTrajectory out;
  const std::size_t n = static_cast<std::size_t>(horizon_days) + 1;
  out.t.reserve(n);
  out.s.reserve(n);
  out.i.reserve(n);
  out.r.reserve(n);
  out.t.push_back(0.0);
  out.s.push_back(static_cast<double>(s));
  out.i.push_back(static_cast<double>(i));
  out.r.push_back(static_cast<double>(r));

  const double p_rec = -std::expm1(-p.alpha);  // 1 - exp(-alpha), one day
  for (int day = 1; day <= horizon_days; ++day) {
    const double p_inf = -std::expm1(-p.beta * static_cast<double>(i));
    const long infections = rng.binomial(s, p_inf);
    const long recoveries = rng.binomial(i, p_rec);
    s -= infections;
    i += infections - recoveries;
    r += recoveries;
    out.t.push_back(static_cast<double>(day));
    out.s.push_back(static_cast<double>(s));
    out.i.push_back(static_cast<double>(i));
    out.r.push_back(static_cast<double>(r));
  }
  return out;
}

double sir_lambda(std::span<const double> observed_infected,
                  std::span<const double> mean_infected, bool floor_mean) {
  if (observed_infected.size() != mean_infected.size()) {
    throw ShapeError("sir_lambda: series length mismatch");
  }
  if (observed_infected.empty()) throw ShapeError("sir_lambda: empty series");
  double sum = 0.0;
  for (std::size_t k = 0; k < observed_infected.size(); ++k) {
    double m = mean_infected[k];
    if (!(m > 0.0)) {
      if (!floor_mean) {
        throw DomainError("sir_lambda: nonpositive mean infected count");
      }
      m = kSirMeanFloor;
    }
    const double d = observed_infected[k] - m;
    sum += d * d / m;
  }
  return kSirLambdaScale * std::sqrt(sum / static_cast<double>(observed_infected.size()));
}

}  // namespace cdf2pdf::sim
