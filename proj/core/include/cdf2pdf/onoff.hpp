#pragma once

#include <utility>

namespace cdf2pdf::sim {

// Counting experiment with a signal region observing N = signal + background
// events and a control region observing M = background events. The signal
// mean is mu, the background mean is nu, and both regions are Poisson.
struct OnOffParams {
  double mu = 0.0;
  double nu = 0.0;
};

struct OnOffObservation {
  long n = 0;  // signal-region count
  long m = 0;  // control-region count
};

// log of Pois(n; mu+nu) * Pois(m; nu), with 0*log(0) = 0 at the boundary.
// A zero mean with a nonzero count is outside the domain.
double onoff_log_likelihood(const OnOffObservation& obs, const OnOffParams& p);

// Conditional best-fit (mu_hat, nu_hat): (n-m, m) when n > m, otherwise mu
// pinned to the physical boundary with nu_hat = (n+m)/2.
std::pair<double, double> onoff_estimates(const OnOffObservation& obs);

// -2 log likelihood ratio against the best fit; >= 0 by construction and 0 at
// the best-fit point.
double onoff_lambda(const OnOffObservation& obs, const OnOffParams& p);

}  // namespace cdf2pdf::sim
